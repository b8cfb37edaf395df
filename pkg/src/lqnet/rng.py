"""Counter-based random substreams.

Every random draw in a simulation is addressed by a tuple of keys such as
``(master_seed, "rep", r, "group", g, "agent", i, "links")`` plus the period
number.  The keys are hashed into a Philox key and the period into the Philox
counter, so a draw never depends on how many other draws happened before it
or in which order agents, groups or replications were evaluated.
"""

from __future__ import annotations

import hashlib
from functools import lru_cache

import numpy as np

PURPOSES = ("links", "effort")


def _key_words(master_seed: int, keys: tuple) -> np.ndarray:
    text = ":".join([str(int(master_seed))] + [str(k) for k in keys])
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return np.frombuffer(digest[:16], dtype="<u8").copy()


@lru_cache(maxsize=65536)
def _cached_key(master_seed: int, keys: tuple) -> bytes:
    return _key_words(master_seed, keys).tobytes()


def substream(master_seed: int, *keys, counter: int = 0) -> np.random.Generator:
    """Independent generator for the named substream at position ``counter``."""
    key = np.frombuffer(_cached_key(int(master_seed), tuple(keys)), dtype="<u8")
    # period lives in the top counter word; the low words are free for draws
    ctr = np.array([0, 0, 0, int(counter)], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key, counter=ctr))


class GroupStreams:
    """Substream factory for one group of one replication."""

    def __init__(self, master_seed: int, replication: int, group: int):
        self.master_seed = int(master_seed)
        self.replication = int(replication)
        self.group = int(group)

    def generator(self, period: int, agent: int, purpose: str) -> np.random.Generator:
        if purpose not in PURPOSES:
            raise ValueError(f"unknown stream purpose {purpose!r}")
        return substream(self.master_seed, "rep", self.replication, "group", self.group,
                         "agent", agent, purpose, counter=period)

    def __repr__(self) -> str:
        return (f"GroupStreams(master_seed={self.master_seed}, "
                f"replication={self.replication}, group={self.group})")
