"""Splittable deterministic randomness.

Every randomized algorithm takes a SeedTree (or a child of one), so a single
top-level seed reproduces the entire run.  Children are derived by hashing the
parent seed together with a textual label, which keeps independent subsystems
decoupled: adding a draw in one place does not shift the streams of another.
"""

import hashlib
import random

__all__ = ["SeedTree"]


class SeedTree:
    def __init__(self, seed=0):
        self.seed = int(seed)

    def child(self, label):
        h = hashlib.sha256(f"{self.seed}:{label}".encode()).digest()
        return SeedTree(int.from_bytes(h[:8], "big"))

    def rng(self):
        """A fresh random.Random for this node."""
        return random.Random(self.seed)

    def __repr__(self):
        return f"SeedTree({self.seed})"
