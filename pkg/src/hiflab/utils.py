"""Small shared helpers: angle normalization, seeding, file plumbing."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile

import numpy as np


def wrap_angle(theta):
    """Normalize an angle (scalar or array) to (-pi, pi]."""
    wrapped = np.mod(-np.asarray(theta) + np.pi, 2.0 * np.pi)
    out = np.pi - wrapped
    # mod() puts -pi at the open end; fold it back to +pi
    out = np.where(out == -np.pi, np.pi, out)
    if np.isscalar(theta) or np.ndim(theta) == 0:
        return float(out)
    return out


def angle_diff(a, b):
    """Shortest-arc difference a - b, in (-pi, pi]."""
    return wrap_angle(np.asarray(a) - np.asarray(b))


def derived_seed(root_seed: int, *path) -> int:
    """Stable per-item seed derived from a root seed and an index path."""
    ss = np.random.SeedSequence([int(root_seed) & 0xFFFFFFFF, *[int(p) & 0xFFFFFFFF for p in path]])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed)))


def config_digest(obj) -> str:
    """Short SHA-256 digest of a JSON-serializable object (canonical form)."""
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]


def atomic_write_text(path: str, text: str) -> None:
    """Write text to `path` via a temp file + rename so readers never see partial files."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def atomic_write_json(path: str, obj) -> None:
    atomic_write_text(path, json.dumps(obj, indent=2, sort_keys=True) + "\n")
