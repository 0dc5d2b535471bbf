"""On-disk cache keyed by a content hash of (tool version, kind, inputs).

Groups are stored as JSON, graphs as .npz.  Every entry carries the digest of
its payload; an unreadable or mismatching entry is treated as missing and
rebuilt by the caller.
"""

from __future__ import annotations

import hashlib
import io
import json
import logging
import os
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__

log = logging.getLogger(__name__)

ENV_VAR = "TRIVALENT_CACHE"


def input_hash(kind: str, **inputs) -> str:
    doc = json.dumps({"tool": __version__, "kind": kind, "inputs": inputs}, sort_keys=True)
    return hashlib.sha256(doc.encode()).hexdigest()[:16]


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


class Cache:
    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def _path(self, key: str, ext: str) -> Path:
        return self.root / f"{key}.{ext}"

    # JSON payloads -------------------------------------------------------

    def get_text(self, key: str) -> Optional[str]:
        p = self._path(key, "json")
        try:
            doc = json.loads(p.read_text())
            payload = doc["payload"]
            if doc.get("key") != key or _digest(payload.encode()) != doc.get("sha256"):
                raise ValueError("digest mismatch")
            return payload
        except FileNotFoundError:
            return None
        except (ValueError, KeyError, TypeError, OSError) as exc:
            log.info("discarding corrupt cache entry %s (%s)", p.name, exc)
            return None

    def put_text(self, key: str, payload: str) -> None:
        doc = {"key": key, "sha256": _digest(payload.encode()), "payload": payload}
        self._atomic_write(self._path(key, "json"), json.dumps(doc).encode())

    # array payloads ------------------------------------------------------

    def get_arrays(self, key: str) -> Optional[dict[str, np.ndarray]]:
        p = self._path(key, "npz")
        try:
            with np.load(p, allow_pickle=False) as z:
                arrays = {k: z[k] for k in z.files if k != "__digest__"}
                stored = bytes(z["__digest__"]).decode()
            if stored != self._array_digest(arrays):
                raise ValueError("digest mismatch")
            return arrays
        except FileNotFoundError:
            return None
        except Exception as exc:  # any unreadable file counts as a miss
            log.info("discarding corrupt cache entry %s (%s)", p.name, exc)
            return None

    def put_arrays(self, key: str, arrays: dict[str, np.ndarray]) -> None:
        buf = io.BytesIO()
        digest = np.frombuffer(self._array_digest(arrays).encode(), dtype=np.uint8)
        np.savez(buf, __digest__=digest, **arrays)
        self._atomic_write(self._path(key, "npz"), buf.getvalue())

    @staticmethod
    def _array_digest(arrays: dict[str, np.ndarray]) -> str:
        h = hashlib.sha256()
        for k in sorted(arrays):
            a = np.ascontiguousarray(arrays[k])
            h.update(k.encode())
            h.update(str(a.dtype).encode())
            h.update(str(a.shape).encode())
            h.update(a.tobytes())
        return h.hexdigest()

    @staticmethod
    def _atomic_write(path: Path, data: bytes) -> None:
        tmp = path.with_suffix(path.suffix + ".tmp")
        tmp.write_bytes(data)
        os.replace(tmp, path)
