#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Licensed under LGPLv3, see file LICENSE in this source tree.
#
"""
IDX.py - read and write MNIST IDX files

The files are big-endian ::

    [offset] [type]          [value]
    0000     32 bit integer  0x00000803  magic number (images, unsigned byte, 3 dims)
    0004     32 bit integer  N           number of images
    0008     32 bit integer  rows
    0012     32 bit integer  cols
    0016     unsigned byte   pixels...

    0000     32 bit integer  0x00000801  magic number (labels, unsigned byte, 1 dim)
    0004     32 bit integer  N           number of items
    0008     unsigned byte   labels...

Files ending in .gz are read and written through gzip.
"""

# --- standard Python modules ---
import gzip
import os
import struct

# --- 3rd party modules ---
import numpy as np

# --- this application's modules ---
from ..io.IOExceptions import IDXFormatError
from .Dataset import Dataset

# ------------------------------------------------------------------------------

IMAGES_MAGIC = 0x00000803
LABELS_MAGIC = 0x00000801

MNIST_FILES = {
    "train": ("train-images-idx3-ubyte", "train-labels-idx1-ubyte"),
    "test": ("t10k-images-idx3-ubyte", "t10k-labels-idx1-ubyte"),
}


def _open(path, mode):
    if str(path).endswith(".gz"):
        return gzip.open(path, mode)
    return open(path, mode)


def read_idx(path, magic):
    """
    Read an unsigned byte IDX file and check its magic number.

    :returns: numpy uint8 array shaped by the header dimensions
    """
    with _open(path, "rb") as file:
        raw = file.read()
    if len(raw) < 4:
        raise IDXFormatError("{} is truncated (no header)".format(path))
    (found,) = struct.unpack(">I", raw[:4])
    if found != magic:
        raise IDXFormatError(
            "Bad magic number in {} : 0x{:08X} (expected 0x{:08X})".format(
                path, found, magic
            )
        )
    ndim = found & 0xFF
    header_size = 4 + 4 * ndim
    if len(raw) < header_size:
        raise IDXFormatError("{} is truncated (incomplete header)".format(path))
    shape = struct.unpack(">{}I".format(ndim), raw[4:header_size])
    expected = int(np.prod(shape))
    payload = raw[header_size:]
    if len(payload) != expected:
        raise IDXFormatError(
            "{} holds {} data bytes, header announces {}".format(
                path, len(payload), expected
            )
        )
    return np.frombuffer(payload, dtype=np.uint8).reshape(shape)


def write_idx(path, array):
    """
    Write a uint8 array (1 dim for labels, 3 dims for images) as an IDX file.
    """
    array = np.asarray(array)
    if array.dtype != np.uint8:
        raise ValueError("IDX writer handles unsigned bytes only")
    if array.ndim not in (1, 3):
        raise ValueError("IDX writer expects 1 dim (labels) or 3 dims (images)")
    magic = 0x00000800 | array.ndim
    header = struct.pack(">I", magic) + struct.pack(
        ">{}I".format(array.ndim), *array.shape
    )
    with _open(path, "wb") as file:
        file.write(header)
        file.write(np.ascontiguousarray(array).tobytes())
    return path


def load_mnist_idx(images_path, labels_path, num_classes=10, source="mnist"):
    """
    Load an images/labels pair. Pixels are divided by 255 and each image is
    flattened to one row.
    """
    images = read_idx(images_path, IMAGES_MAGIC)
    labels = read_idx(labels_path, LABELS_MAGIC)
    if images.shape[0] != labels.shape[0]:
        raise IDXFormatError(
            "{} images but {} labels ({} / {})".format(
                images.shape[0], labels.shape[0], images_path, labels_path
            )
        )
    if labels.size and labels.max() >= num_classes:
        raise IDXFormatError(
            "Label {} out of range in {}".format(int(labels.max()), labels_path)
        )
    samples = images.reshape(images.shape[0], -1).astype(np.float64) / 255.0
    return Dataset(samples, labels.astype(np.int64), num_classes=num_classes, source=source)


def find_idx_files(data_dir, split="train"):
    """
    Locate the images and labels files of a split, plain or gzip compressed.
    """
    found = []
    for name in MNIST_FILES[split]:
        for candidate in (name, name + ".gz"):
            path = os.path.join(data_dir, candidate)
            if os.path.isfile(path):
                found.append(path)
                break
        else:
            raise FileNotFoundError(
                "Missing {}[.gz] in {} (set FEEL_DATA_DIR or data.data_dir)".format(
                    name, data_dir
                )
            )
    return tuple(found)


def write_dataset_idx(dataset, data_dir, split="train", compress=True, image_shape=None):
    """
    Store a Dataset as an IDX pair. Features are min-max scaled to bytes, so
    a reload gives values in [0, 1].

    :param image_shape: (rows, cols) of every image, one row of `dim` pixels
        by default. (28, 28) writes MNIST shaped files for dim 784.
    """
    rows, cols = image_shape if image_shape else (1, dataset.dim)
    if rows * cols != dataset.dim:
        raise ValueError(
            "Image shape {}x{} doesn't hold {} features".format(rows, cols, dataset.dim)
        )
    os.makedirs(data_dir, exist_ok=True)
    samples = dataset.samples
    low, high = samples.min(), samples.max()
    span = (high - low) if high > low else 1.0
    pixels = np.rint((samples - low) / span * 255.0).astype(np.uint8)
    images_name, labels_name = MNIST_FILES[split]
    suffix = ".gz" if compress else ""
    images_path = write_idx(
        os.path.join(data_dir, images_name + suffix),
        pixels.reshape(len(dataset), rows, cols),
    )
    labels_path = write_idx(
        os.path.join(data_dir, labels_name + suffix),
        dataset.labels.astype(np.uint8),
    )
    return images_path, labels_path
