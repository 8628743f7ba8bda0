"""Versioned binary model container.

Layout, all integers little-endian::

    magic  b"PLIDMODL"
    u16    format version
    u32    header length, then a UTF-8 JSON header
    blobs  raw arrays in header order
    u32    CRC32 of every preceding byte

The header carries the model kind, label table, n-gram spec,
hyperparameters, vocabulary and blob descriptors. Hierarchical models embed
the root and expert containers as opaque blobs.
"""

from __future__ import annotations

import json
import os
import struct
import zlib
from pathlib import Path

import numpy as np

from ..features import NgramSpec
from .mlp import MLP, MLPHyper
from .mnb import MultinomialNB
from .subword import SubwordHyper, SubwordLinear

MAGIC = b"PLIDMODL"
FORMAT_VERSION = 1
DTYPES = {"f4": "<f4", "u4": "<u4", "raw": "|u1"}


class ModelFormatError(ValueError):
    pass


class UnsupportedVersionError(ModelFormatError):
    pass


def pack(kind: str, header: dict, blobs: dict) -> bytes:
    """Serialize ``header`` plus named arrays (or nested container bytes)."""
    descr, chunks = [], []
    for name, value in blobs.items():
        if isinstance(value, (bytes, bytearray)):
            raw, code, shape = bytes(value), "raw", [len(value)]
        else:
            arr = np.asarray(value)
            code = "u4" if arr.dtype.kind in "iu" else "f4"
            if code == "u4" and arr.size and (arr.min() < 0 or arr.max() > 0xFFFFFFFF):
                raise ModelFormatError(f"blob {name!r} does not fit in uint32")
            raw, shape = arr.astype(DTYPES[code]).tobytes(), list(arr.shape)
        descr.append({"name": name, "dtype": code, "shape": shape, "nbytes": len(raw)})
        chunks.append(raw)
    meta = json.dumps(dict(header, kind=kind, blobs=descr), ensure_ascii=False,
                      sort_keys=True).encode("utf-8")
    body = MAGIC + struct.pack("<HI", FORMAT_VERSION, len(meta)) + meta + b"".join(chunks)
    return body + struct.pack("<I", zlib.crc32(body))


def unpack(data: bytes) -> tuple[dict, dict]:
    if len(data) < len(MAGIC) + 10 or not data.startswith(MAGIC):
        raise ModelFormatError("not a model file (bad magic)")
    version, hlen = struct.unpack_from("<HI", data, len(MAGIC))
    if version != FORMAT_VERSION:
        raise UnsupportedVersionError(
            f"model format version {version} is not supported (expected {FORMAT_VERSION})")
    (crc,) = struct.unpack("<I", data[-4:])
    if zlib.crc32(data[:-4]) != crc:
        raise ModelFormatError("model file is truncated or corrupt (checksum mismatch)")
    pos = len(MAGIC) + 6
    header = json.loads(data[pos:pos + hlen].decode("utf-8"))
    pos += hlen
    blobs = {}
    for d in header["blobs"]:
        raw = data[pos:pos + d["nbytes"]]
        pos += d["nbytes"]
        if d["dtype"] == "raw":
            blobs[d["name"]] = raw
        else:
            blobs[d["name"]] = np.frombuffer(raw, dtype=DTYPES[d["dtype"]]).reshape(d["shape"])
    if pos != len(data) - 4:
        raise ModelFormatError("model file length does not match its header")
    return header, blobs


def _vocab_list(model) -> list[str]:
    vocab = model.vocabulary
    out = [""] * len(vocab)
    for g, i in vocab.items():
        out[i] = g
    return out


def to_bytes(model) -> bytes:
    if model.kind == "hierarchical":
        return model.to_bytes()
    header = {"labels": model.labels, "ngram": model.spec.to_dict(),
              "vocabulary": _vocab_list(model)}
    if model.kind == "mnb":
        blobs = {"class_counts": model.class_counts, "feature_counts": model.feature_counts}
    else:
        header["hyper"] = model.hyper.to_dict()
        blobs = model.params()
    return pack(model.kind, header, blobs)


def from_bytes(data: bytes):
    header, blobs = unpack(data)
    try:
        return _build(header, blobs)
    except (KeyError, TypeError) as exc:
        raise ModelFormatError(f"model header or blobs incomplete: {exc}") from None


def _build(header: dict, blobs: dict):
    kind = header.get("kind")
    if kind == "hierarchical":
        from ..hier import HierarchicalModel
        return HierarchicalModel.from_parts(header, blobs)
    if kind not in ("mnb", "subword_linear", "mlp"):
        raise ModelFormatError(f"unknown model kind {kind!r}")
    labels = header["labels"]
    spec = NgramSpec(**header["ngram"])
    vocab = {g: i for i, g in enumerate(header["vocabulary"])}
    if kind == "mnb":
        return MultinomialNB(labels, spec, vocab, blobs["class_counts"],
                             blobs["feature_counts"])
    if kind == "subword_linear":
        tree = (blobs["tree_mask"], blobs["tree_code"]) if "tree_mask" in blobs else None
        return SubwordLinear(labels, spec, vocab, blobs["E"], blobs["W"], blobs["b"],
                             SubwordHyper(**header["hyper"]), tree)
    return MLP(labels, spec, vocab, blobs["W1"], blobs["b1"], blobs["W2"], blobs["b2"],
               MLPHyper(**header["hyper"]))


def save_model(model, path) -> None:
    """Write atomically: a crash never leaves a half-written model behind."""
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(to_bytes(model))
    os.replace(tmp, path)


def load_model(path):
    return from_bytes(Path(path).read_bytes())
