"""Shared helpers: seed derivation, text normalization, number formatting, atomic IO."""

from __future__ import annotations

import hashlib
import json
import math
import os
import re
import tempfile
from typing import Any, Iterable

_WS_RE = re.compile(r"\s+")
_TOKEN_RE = re.compile(r"[a-z0-9]+")


def derive_seed(*parts: object) -> int:
    """Stable 63-bit seed from arbitrary parts (unlike hash(), survives restarts)."""
    h = hashlib.blake2b(digest_size=8)
    for p in parts:
        h.update(repr(p).encode("utf-8"))
        h.update(b"\x1f")
    return int.from_bytes(h.digest(), "big") & 0x7FFF_FFFF_FFFF_FFFF


def collapse_ws(text: str) -> str:
    return _WS_RE.sub(" ", text).strip()


def normalize_text(text: str) -> str:
    """Casefold, trim, collapse whitespace, strip punctuation at token edges."""
    tokens = []
    for tok in collapse_ws(text.casefold()).split(" "):
        tok = tok.strip("\"'.,!?;:()[]{}")
        if tok:
            tokens.append(tok)
    return " ".join(tokens)


def normalize_tokens(text: str) -> set[str]:
    """Lowercased alphanumeric token set, for overlap scoring and provenance checks."""
    return set(_TOKEN_RE.findall(text.casefold()))


def parse_number(text: str) -> float | None:
    try:
        value = float(text)
    except (TypeError, ValueError):
        return None
    return value if math.isfinite(value) else None


def format_number(value: float) -> str:
    """Render integral floats without a trailing .0 so golds stay tidy."""
    if float(value).is_integer():
        return str(int(value))
    return repr(float(value))


def whitespace_tokenizer(text: str) -> int:
    """Default token counter: whitespace-separated chunks."""
    return len(text.split())


def atomic_write_text(path: str, content: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(content)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_jsonl(path: str, records: Iterable[dict[str, Any]]) -> None:
    lines = [json.dumps(r, sort_keys=True, ensure_ascii=False) for r in records]
    atomic_write_text(path, "\n".join(lines) + ("\n" if lines else ""))


def read_jsonl(path: str) -> list[dict[str, Any]]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(json.loads(line))
    return out


def sha256_file(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()
