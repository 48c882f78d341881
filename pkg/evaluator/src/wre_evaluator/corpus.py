"""Readers for robustness corpora produced by the wre command line tool.

The evaluator talks to the simulation side exclusively through files: a
``manifest.json`` describing the samples, whitespace edge lists under
``graphs/``, and envelope label CSVs under ``labels/``.  Everything here is
parsed from those formats directly so the two packages stay decoupled.
"""

from __future__ import annotations

import csv
import json
import os
from dataclasses import dataclass, field

import numpy as np

SCHEMA_VERSION = 1


@dataclass
class Sample:
    """One corpus entry: an adjacency image plus its target curve."""

    sample_id: str
    family: str
    n: int
    split: str
    image: np.ndarray = field(repr=False)
    label: np.ndarray = field(repr=False)


def read_manifest(root):
    """Load and validate ``manifest.json`` under a corpus root directory."""
    path = os.path.join(root, "manifest.json")
    with open(path, encoding="utf-8") as fh:
        manifest = json.load(fh)
    version = manifest.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ValueError(
            f"unsupported corpus schema_version {version!r}, expected {SCHEMA_VERSION}"
        )
    if "samples" not in manifest:
        raise ValueError("manifest has no samples entry")
    return manifest


def read_edge_list(path, n):
    """Parse a whitespace edge list into a dense symmetric 0/1 image.

    Rows are ``u v`` pairs, comments start with ``#``.  Isolated nodes may be
    recorded as self pairs ``v v``; those keep the node id visible in the file
    but carry no adjacency, so the diagonal stays zero.  Node ids must lie in
    ``[0, n)``.
    """
    image = np.zeros((n, n), dtype=np.float32)
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            parts = text.split()
            if len(parts) < 2:
                raise ValueError(f"{path}:{lineno}: malformed edge row {text!r}")
            u, v = int(parts[0]), int(parts[1])
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"{path}:{lineno}: node id outside [0, {n})")
            if u == v:
                continue
            image[u, v] = 1.0
            image[v, u] = 1.0
    return image


def read_curve_csv(path):
    """Read the ``relative`` column of a curve CSV, plus its metadata.

    Returns ``(meta, relative)`` where ``meta`` is the ``key=value`` dict from
    the leading comment line and ``relative`` is a float64 array ordered by
    step.
    """
    meta = {}
    rows = []
    with open(path, encoding="utf-8") as fh:
        first = fh.readline().strip()
        if not first.startswith("#"):
            raise ValueError(f"{path}: missing metadata comment line")
        for token in first.lstrip("#").split():
            if "=" in token:
                key, value = token.split("=", 1)
                meta[key] = value
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or header[0] != "step":
            raise ValueError(f"{path}: missing step header row")
        for row in reader:
            if not row:
                continue
            rows.append((int(row[0]), float(row[3])))
    rows.sort(key=lambda item: item[0])
    relative = np.array([value for _, value in rows], dtype=np.float64)
    return meta, relative


def pad_image(image, side):
    """Zero pad a square image on the bottom/right up to ``side``."""
    n = image.shape[0]
    if n >= side:
        return image
    padded = np.zeros((side, side), dtype=image.dtype)
    padded[:n, :n] = image
    return padded


def load_split(root, split, min_side=None):
    """Load every sample assigned to ``split`` as :class:`Sample` records.

    With ``min_side`` set, adjacency images smaller than that are zero padded
    so a whole split can be stacked into one batch tensor.
    """
    manifest = read_manifest(root)
    samples = []
    for entry in manifest["samples"]:
        if entry["split"] != split:
            continue
        n = int(entry["n"])
        image = read_edge_list(os.path.join(root, entry["graph"]), n)
        if min_side is not None:
            image = pad_image(image, min_side)
        _, label = read_curve_csv(os.path.join(root, entry["label"]))
        samples.append(
            Sample(
                sample_id=entry["id"],
                family=entry["family"],
                n=n,
                split=split,
                image=image,
                label=label,
            )
        )
    if not samples:
        raise ValueError(f"corpus at {root} has no samples in split {split!r}")
    return samples
