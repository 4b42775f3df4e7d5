"""The simulated knowledge world queried by synthesis and the search environment.

A fixture is a line-delimited JSON file, one record per line, with a ``kind``
field selecting the record type:

- ``entity``: ``{"kind": "entity", "id", "class", "snippets": [...]}``
- ``predicate``: ``{"kind": "predicate", "id", "family", "listed"}`` where
  ``listed`` is one of ``whitelist`` / ``blacklist`` / ``neutral``
- ``edge``: ``{"kind": "edge", "source", "predicate", "value"}`` — the source
  entity carries attribute (predicate, value)
- ``distractor``: ``{"kind": "distractor", "topic", "snippets": [...]}``
- ``abstract_value``: ``{"kind": "abstract_value", "entity"}``
- ``bias_prone_type``: ``{"kind": "bias_prone_type", "class"}``

Fixtures are immutable after load; loading validates referential integrity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

LISTED_FLAGS = ("whitelist", "blacklist", "neutral")

# Attribute families forbidden by default and value classes considered
# bias-prone; fixtures may extend these via bias_prone_type records.
DEFAULT_BIAS_PRONE_TYPES = frozenset({"country", "city", "political_party", "religion"})

HUB_OUT_DEGREE_LIMIT = 300


class LoadError(ValueError):
    """Fixture file failed to parse or violates referential integrity."""

    def __init__(self, kind: str, message: str = ""):
        assert kind in ("parse", "dangling_reference", "duplicate_id"), kind
        super().__init__(message or kind)
        self.kind = kind


class UnknownEntity(KeyError):
    pass


@dataclass
class Entity:
    id: str
    class_name: str
    attributes: list[tuple[str, str]] = field(default_factory=list)
    snippets: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class Predicate:
    id: str
    family: str
    listed: str = "neutral"


@dataclass
class WorldFixture:
    entities: dict[str, Entity] = field(default_factory=dict)
    predicates: dict[str, Predicate] = field(default_factory=dict)
    abstract_values: set[str] = field(default_factory=set)
    bias_prone_types: set[str] = field(default_factory=set)
    distractor_pool: dict[str, list[str]] = field(default_factory=dict)

    # Derived indexes, built by finalize().
    _incoming: dict[str, list[tuple[str, str]]] = field(default_factory=dict, repr=False)

    def finalize(self) -> "WorldFixture":
        self._incoming = {eid: [] for eid in self.entities}
        for ent in self.entities.values():
            for pred_id, value_id in ent.attributes:
                self._incoming[value_id].append((ent.id, pred_id))
        return self

    def entity(self, entity_id: str) -> Entity:
        try:
            return self.entities[entity_id]
        except KeyError:
            raise UnknownEntity(entity_id)

    def entities_of_class(self, class_name: str) -> list[Entity]:
        return [e for e in self.entities.values() if e.class_name == class_name]

    def blacklisted_families(self) -> set[str]:
        return {p.family for p in self.predicates.values() if p.listed == "blacklist"}

    def attribute_value(self, entity_id: str, predicate_id: str) -> str | None:
        for pid, vid in self.entity(entity_id).attributes:
            if pid == predicate_id:
                return vid
        return None


def neighbors(world: WorldFixture, entity_id: str) -> set[str]:
    """Undirected first-order neighborhood: attribute values plus referrers, minus self."""
    ent = world.entity(entity_id)
    out = {value_id for _, value_id in ent.attributes}
    out.update(src for src, _ in world._incoming.get(entity_id, ()))
    out.discard(entity_id)
    return out


def out_degree(world: WorldFixture, entity_id: str) -> int:
    """How many attribute edges point at this entity (hub-filter count)."""
    world.entity(entity_id)
    return len(world._incoming.get(entity_id, ()))


def _require(condition: bool, kind: str, message: str) -> None:
    if not condition:
        raise LoadError(kind, message)


def world_from_records(records: list[dict]) -> WorldFixture:
    world = WorldFixture(bias_prone_types=set(DEFAULT_BIAS_PRONE_TYPES))
    edges: list[tuple[str, str, str]] = []
    abstract: list[str] = []
    for n, rec in enumerate(records, start=1):
        kind = rec.get("kind")
        if kind == "entity":
            eid = rec.get("id")
            _require(isinstance(eid, str) and bool(eid), "parse", f"record {n}: bad entity id")
            _require(eid not in world.entities, "duplicate_id", f"duplicate entity {eid!r}")
            cls = rec.get("class")
            _require(isinstance(cls, str) and bool(cls), "parse", f"record {n}: bad class")
            snippets = rec.get("snippets", [])
            _require(
                isinstance(snippets, list) and all(isinstance(s, str) for s in snippets),
                "parse",
                f"record {n}: snippets must be strings",
            )
            world.entities[eid] = Entity(id=eid, class_name=cls, snippets=list(snippets))
        elif kind == "predicate":
            pid = rec.get("id")
            _require(isinstance(pid, str) and bool(pid), "parse", f"record {n}: bad predicate id")
            _require(pid not in world.predicates, "duplicate_id", f"duplicate predicate {pid!r}")
            family = rec.get("family")
            _require(isinstance(family, str) and bool(family), "parse", f"record {n}: bad family")
            listed = rec.get("listed", "neutral")
            _require(listed in LISTED_FLAGS, "parse", f"record {n}: bad listed flag {listed!r}")
            world.predicates[pid] = Predicate(id=pid, family=family, listed=listed)
        elif kind == "edge":
            src, pid, val = rec.get("source"), rec.get("predicate"), rec.get("value")
            _require(
                all(isinstance(x, str) and x for x in (src, pid, val)),
                "parse",
                f"record {n}: edge needs source/predicate/value",
            )
            edges.append((src, pid, val))
        elif kind == "distractor":
            topic = rec.get("topic")
            snippets = rec.get("snippets", [])
            _require(isinstance(topic, str) and bool(topic), "parse", f"record {n}: bad topic")
            _require(
                isinstance(snippets, list) and all(isinstance(s, str) for s in snippets),
                "parse",
                f"record {n}: snippets must be strings",
            )
            world.distractor_pool.setdefault(topic, []).extend(snippets)
        elif kind == "abstract_value":
            eid = rec.get("entity")
            _require(isinstance(eid, str) and bool(eid), "parse", f"record {n}: bad entity ref")
            abstract.append(eid)
        elif kind == "bias_prone_type":
            cls = rec.get("class")
            _require(isinstance(cls, str) and bool(cls), "parse", f"record {n}: bad class")
            world.bias_prone_types.add(cls)
        else:
            raise LoadError("parse", f"record {n}: unknown kind {kind!r}")

    for src, pid, val in edges:
        _require(src in world.entities, "dangling_reference", f"edge source {src!r} missing")
        _require(val in world.entities, "dangling_reference", f"edge value {val!r} missing")
        _require(pid in world.predicates, "dangling_reference", f"edge predicate {pid!r} missing")
        world.entities[src].attributes.append((pid, val))
    for eid in abstract:
        _require(eid in world.entities, "dangling_reference", f"abstract value {eid!r} missing")
        world.abstract_values.add(eid)
    return world.finalize()


def load_world(path: str) -> WorldFixture:
    records = []
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                records.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise LoadError("parse", f"line {n}: {exc}")
    return world_from_records(records)


def world_to_records(world: WorldFixture) -> list[dict]:
    records: list[dict] = []
    for ent in world.entities.values():
        records.append(
            {"kind": "entity", "id": ent.id, "class": ent.class_name, "snippets": ent.snippets}
        )
    for pred in world.predicates.values():
        records.append(
            {"kind": "predicate", "id": pred.id, "family": pred.family, "listed": pred.listed}
        )
    for ent in world.entities.values():
        for pid, val in ent.attributes:
            records.append({"kind": "edge", "source": ent.id, "predicate": pid, "value": val})
    for eid in sorted(world.abstract_values):
        records.append({"kind": "abstract_value", "entity": eid})
    for cls in sorted(world.bias_prone_types - DEFAULT_BIAS_PRONE_TYPES):
        records.append({"kind": "bias_prone_type", "class": cls})
    for topic in sorted(world.distractor_pool):
        records.append(
            {"kind": "distractor", "topic": topic, "snippets": world.distractor_pool[topic]}
        )
    return records


def save_world(world: WorldFixture, path: str) -> None:
    from .util import write_jsonl

    write_jsonl(path, world_to_records(world))
