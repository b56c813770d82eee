"""Shared fixtures: a session-wide cache of built groups and character tables.

Character tables are the expensive artifact, so every test pulls them from one
cache keyed by the spec text.  Tables for very large groups are recomputed on
demand instead of retained, to keep the session's memory footprint flat.
"""

from __future__ import annotations

from typing import Dict, Tuple

import pytest

from acdlab.chartab import CharacterTable, character_table
from acdlab.constructions import build
from acdlab.group import FiniteGroup
from acdlab.specparse import parse_group_spec

# Groups above this order get their tables recomputed instead of cached.
_RETAIN_MAX_ORDER = 2000


class TableCache:
    def __init__(self) -> None:
        self._groups: Dict[str, FiniteGroup] = {}
        self._tables: Dict[str, CharacterTable] = {}

    def group(self, text: str) -> FiniteGroup:
        if text not in self._groups:
            self._groups[text] = build(parse_group_spec(text))
        return self._groups[text]

    def table(self, text: str) -> CharacterTable:
        if text in self._tables:
            return self._tables[text]
        G = self.group(text)
        T = character_table(G)
        if G.order <= _RETAIN_MAX_ORDER:
            self._tables[text] = T
        return T

    def pair(self, text: str) -> Tuple[FiniteGroup, CharacterTable]:
        return self.group(text), self.table(text)


@pytest.fixture(scope="session")
def cache() -> TableCache:
    return TableCache()
