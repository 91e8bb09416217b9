"""
Setup.py
"""
from setuptools import setup
from FEELsim import infos

requirements = ["numpy", "pandas", "colorama", "python-dotenv"]

setup(
    name="FEELsim",
    version=infos.__version__,
    description="Data-quality based UE scheduling simulator for federated edge learning",
    author=infos.__author__,
    author_email=infos.__email__,
    url=infos.__url__,
    download_url=infos.__download_url__,
    keywords=["federated learning", "edge", "scheduling", "simulation"],
    packages=[
        "FEELsim",
        "FEELsim.core",
        "FEELsim.core.io",
        "FEELsim.core.functions",
        "FEELsim.core.devices",
        "FEELsim.core.data",
        "FEELsim.core.learner",
        "FEELsim.core.utils",
        "FEELsim.scripts",
        "FEELsim.tasks",
        "FEELsim.db",
    ],
    include_package_data=True,
    install_requires=requirements,
    extras_require={"test": ["pytest"]},
    entry_points={"console_scripts": ["feelsim = FEELsim.scripts.cli:main"]},
    test_suite="tests",
    long_description=open("README.rst").read(),
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Operating System :: OS Independent",
        "Programming Language :: Python",
        "Topic :: Scientific/Engineering :: Artificial Intelligence",
        "Topic :: System :: Networking",
    ],
)
