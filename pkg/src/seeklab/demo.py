"""Builder for the bundled demo fixture.

The graph side carries a film pivot whose twelve cast members support the
constraint-chain walkthrough (12 candidates, 9 after occupation=actor,
3 after award=bafta). The visual side carries bird and flower classes with
numeric attributes for mosaic question synthesis, plus distractor snippets
for robustness runs.
"""

from __future__ import annotations

from .world import WorldFixture, world_from_records

ACTORS = (
    "arden",
    "brook",
    "calder",
    "dray",
    "ellery",
    "fenn",
    "garrick",
    "hale",
    "iris",
)
DIRECTORS = ("jory", "kemp", "lund")
PIVOT = "granite_coast"

BAFTA_WINNERS = ("calder", "dray", "ellery")

BIRDS = {
    # id: (wingspan_cm, mass_g, diet)
    "crestwing": ("50", "30", "seeds"),
    "mirefinch": ("70", "55", "insects"),
    "sablewren": ("35", "18", "seeds"),
    "duskplover": ("64", "88", "crustaceans"),
}
FLOWERS = {
    # id: (petal_count, bloom_month)
    "emberbloom": ("8", "6"),
    "frostlace": ("12", "3"),
}


def demo_records() -> list[dict]:
    records: list[dict] = []

    def entity(eid: str, cls: str, snippets: list[str] | None = None) -> None:
        records.append({"kind": "entity", "id": eid, "class": cls, "snippets": snippets or []})

    def predicate(pid: str, family: str, listed: str = "neutral") -> None:
        records.append({"kind": "predicate", "id": pid, "family": family, "listed": listed})

    def edge(src: str, pid: str, val: str) -> None:
        records.append({"kind": "edge", "source": src, "predicate": pid, "value": val})

    predicate("cast_member", "film")
    predicate("occupation", "occupation", "whitelist")
    predicate("award", "award", "whitelist")
    predicate("education", "education", "whitelist")
    predicate("instance_of", "taxonomy", "whitelist")
    predicate("citizenship", "geography", "blacklist")
    predicate("residence", "geography", "whitelist")
    predicate("wingspan_cm", "measurement", "whitelist")
    predicate("mass_g", "measurement", "whitelist")
    predicate("diet", "ecology", "whitelist")
    predicate("petal_count", "measurement", "whitelist")
    predicate("bloom_month", "measurement", "whitelist")

    entity("actor", "occupation_kind")
    entity("director", "occupation_kind")
    entity("bafta", "award_kind")
    entity("saturn", "award_kind")
    entity("northgate", "school")
    entity("human", "concept")
    entity("verland", "country")
    entity("norsca", "country")
    entity("eastbank", "district")

    people = ACTORS + DIRECTORS
    entity(PIVOT, "film", [f"{PIVOT} cast includes {p}." for p in people])
    for i, person in enumerate(people):
        occupation = "actor" if person in ACTORS else "director"
        snippets = [f"{person} has occupation {occupation}."]
        entity(person, "person", snippets)
        edge(PIVOT, "cast_member", person)
        edge(person, "occupation", occupation)
        edge(person, "instance_of", "human")
        edge(person, "citizenship", "verland" if i < 7 else "norsca")
    for person in BAFTA_WINNERS + ("jory",):
        edge(person, "award", "bafta")
        records.append(
            {"kind": "snippet_patch", "id": person, "text": f"{person} has award bafta."}
        )
    for person in ("fenn", "jory"):
        edge(person, "award", "saturn")
        records.append(
            {"kind": "snippet_patch", "id": person, "text": f"{person} has award saturn."}
        )
    for person in ("brook", "garrick"):
        edge(person, "education", "northgate")
        records.append(
            {"kind": "snippet_patch", "id": person, "text": f"{person} has education northgate."}
        )
    for person in ("arden", "brook", "hale"):
        edge(person, "residence", "eastbank")

    numbers = sorted(
        {v for spec in BIRDS.values() for v in spec[:2]}
        | {v for spec in FLOWERS.values() for v in spec}
    )
    for number in numbers:
        entity(number, "measurement")
    for food in sorted({spec[2] for spec in BIRDS.values()}):
        entity(food, "food")

    for bird, (wingspan, mass, diet) in BIRDS.items():
        entity(
            bird,
            f"bird_{bird}",
            [
                f"the {bird} is a bird species.",
                f"{bird} has wingspan_cm {wingspan}.",
                f"{bird} has mass_g {mass}.",
                f"{bird} has diet {diet}.",
            ],
        )
        edge(bird, "wingspan_cm", wingspan)
        edge(bird, "mass_g", mass)
        edge(bird, "diet", diet)
    for flower, (petals, month) in FLOWERS.items():
        entity(
            flower,
            f"flower_{flower}",
            [
                f"the {flower} is a flowering plant.",
                f"{flower} has petal_count {petals}.",
                f"{flower} has bloom_month {month}.",
            ],
        )
        edge(flower, "petal_count", petals)
        edge(flower, "bloom_month", month)

    records.append({"kind": "abstract_value", "entity": "human"})
    records.append(
        {
            "kind": "distractor",
            "topic": "birds",
            "snippets": [f"field note {i}: an unrelated wader was sighted at station {i}." for i in range(1, 13)],
        }
    )
    records.append(
        {
            "kind": "distractor",
            "topic": "films",
            "snippets": [f"trade column {i}: production news without named credits." for i in range(1, 13)],
        }
    )

    # Fold snippet patches into entity records so snippets round-trip via save_world.
    patched: list[dict] = []
    by_id = {}
    for rec in records:
        if rec["kind"] == "entity":
            by_id[rec["id"]] = rec
            patched.append(rec)
        elif rec["kind"] == "snippet_patch":
            by_id[rec["id"]]["snippets"].append(rec["text"])
        else:
            patched.append(rec)
    return patched


def demo_world() -> WorldFixture:
    return world_from_records(demo_records())
