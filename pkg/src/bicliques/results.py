from __future__ import annotations

import hashlib
from typing import Iterable, NamedTuple


class Biclique(NamedTuple):
    """A reported biclique; both sides are ascending tuples of original vertex ids."""

    left: tuple[int, ...]
    right: tuple[int, ...]

    def format_line(self) -> str:
        return "L: " + " ".join(map(str, self.left)) + " | R: " + " ".join(map(str, self.right))

    def swapped(self) -> "Biclique":
        return Biclique(self.right, self.left)


ResultSet = frozenset  # frozenset[Biclique]; the tuples are already canonical


def result_set(items: Iterable[Biclique]) -> frozenset[Biclique]:
    return frozenset(items)


def digest_of(b: Biclique) -> int:
    h = hashlib.sha256(b.format_line().encode()).digest()
    return int.from_bytes(h, "big")


class Digest:
    """Order-independent digest: sum of per-result SHA-256 values mod 2**256."""

    def __init__(self) -> None:
        self.value = 0
        self.count = 0

    def add(self, b: Biclique) -> None:
        self.value = (self.value + digest_of(b)) % (1 << 256)
        self.count += 1

    def hexdigest(self) -> str:
        return f"{self.value:064x}"
