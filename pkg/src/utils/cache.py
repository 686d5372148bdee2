import hashlib
from pathlib import Path

import orjson

from .config import CACHE_DIR
from .logger import default_logger

logger = default_logger.getChild("Cache")


def presentation_key(pcp_text: str) -> str:
    """Short content hash of a canonical .pcp text"""
    return hashlib.sha256(pcp_text.encode()).hexdigest()[:16]


def sigma_digest(bits: int) -> str:
    return hashlib.sha256(bits.to_bytes((bits.bit_length() + 7) // 8 or 1, "little")).hexdigest()


class ResultCache:
    """Serialized groups and search outcomes with their Sigma-set digests, keyed by presentation hash"""

    def __init__(self, root: Path | None = None):
        self.root = Path(root) if root is not None else CACHE_DIR

    def _path(self, key: str, suffix: str) -> Path:
        return self.root / f"{key}{suffix}"

    def store_group(self, pcp_text: str) -> str:
        key = presentation_key(pcp_text)
        path = self._path(key, ".pcp")
        if not path.exists():
            self.root.mkdir(parents=True, exist_ok=True)
            path.write_text(pcp_text)
            logger.debug(f"Cached group {key} at {path}")
        return key

    def load_group(self, key: str) -> str | None:
        path = self._path(key, ".pcp")
        return path.read_text() if path.exists() else None

    def store_search(self, pcp_text: str, mode: str, payload: dict, bitsets: list[int], sizes: list[int]) -> Path:
        key = self.store_group(pcp_text)
        entry = {
            "payload": payload,
            "sigma": {"digests": [sigma_digest(b) for b in bitsets], "sizes": sizes},
        }
        path = self._path(key, f".{mode}.json")
        path.write_bytes(orjson.dumps(entry, option=orjson.OPT_SORT_KEYS))
        return path

    def load_search(self, pcp_text: str, mode: str) -> dict | None:
        """The stored search entry for exactly this presentation, or None"""
        key = presentation_key(pcp_text)
        if self.load_group(key) != pcp_text:
            return None
        path = self._path(key, f".{mode}.json")
        if not path.exists():
            return None
        try:
            entry = orjson.loads(path.read_bytes())
        except orjson.JSONDecodeError:
            logger.warning(f"Ignoring corrupt cache entry {path}")
            return None
        sigma = entry.get("sigma", {})
        if len(sigma.get("digests", ())) != entry.get("payload", {}).get("distinct_sigma"):
            logger.warning(f"Ignoring cache entry {path}: Sigma digests do not match the stored outcome")
            return None
        logger.info(f"Reusing {mode} search for {key}")
        return entry
