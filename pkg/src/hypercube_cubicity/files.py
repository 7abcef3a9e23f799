"""On-disk formats: representation files and the experiment CSV."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Iterable, List

from .builder import SeedSet
from .core import from_bitstring, to_bitstring

CSV_SCHEMA = "# hypercube-cubicity experiment schema v1"
CSV_COLUMNS = ["d", "c_used", "seed_count", "minimized_count", "cmo_floor", "attempts", "verify_millis"]


class MalformedFile(ValueError):
    pass


@dataclass(frozen=True)
class RepresentationFile:
    """Seed strings are written position 1 first, i.e. bit 0 leftmost."""

    d: int
    seeds: tuple
    rng_seed: int = 0
    verified: bool = False

    @classmethod
    def from_seed_set(cls, S: SeedSet, verified: bool) -> "RepresentationFile":
        return cls(S.d, S.seeds, S.rng_seed, verified)

    def seed_set(self) -> SeedSet:
        return SeedSet(self.d, tuple(self.seeds), self.rng_seed)

    def dumps(self) -> str:
        doc = {
            "d": self.d,
            "seeds": [to_bitstring(x, self.d) for x in self.seeds],
            "rng_seed": self.rng_seed,
            "verified": self.verified,
        }
        return json.dumps(doc, indent=2) + "\n"

    @classmethod
    def loads(cls, text: str) -> "RepresentationFile":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedFile(f"not JSON: {exc}") from None
        if not isinstance(doc, dict):
            raise MalformedFile("top level must be an object")
        d, seeds = doc.get("d"), doc.get("seeds")
        if not isinstance(d, int) or isinstance(d, bool) or not 1 <= d <= 30:
            raise MalformedFile(f"bad dimension {d!r}")
        if not isinstance(seeds, list) or not seeds:
            raise MalformedFile("seeds must be a non-empty list")
        for s in seeds:
            if not isinstance(s, str) or len(s) != d or set(s) - {"0", "1"}:
                raise MalformedFile(f"seed {s!r} is not a binary string of length {d}")
        rng_seed = doc.get("rng_seed", 0)
        verified = doc.get("verified", False)
        if not isinstance(rng_seed, int) or not isinstance(verified, bool):
            raise MalformedFile("rng_seed must be an int and verified a bool")
        return cls(d, tuple(from_bitstring(s) for s in seeds), rng_seed, verified)


@dataclass(frozen=True)
class ExperimentRow:
    d: int
    c_used: float
    seed_count: int
    minimized_count: int
    cmo_floor: float
    attempts: int
    verify_millis: float

    def values(self) -> List[str]:
        return [
            str(self.d),
            repr(self.c_used),
            str(self.seed_count),
            str(self.minimized_count),
            repr(self.cmo_floor),
            str(self.attempts),
            f"{self.verify_millis:.3f}",
        ]


def write_experiment_csv(rows: Iterable[ExperimentRow], summaries: Iterable[str]) -> str:
    buf = io.StringIO()
    buf.write(CSV_SCHEMA + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(row.values())
    for line in summaries:
        buf.write(f"# summary {line}\n")
    return buf.getvalue()


def read_experiment_csv(text: str) -> List[ExperimentRow]:
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    reader = csv.DictReader(lines)
    if reader.fieldnames != CSV_COLUMNS:
        raise MalformedFile(f"unexpected columns {reader.fieldnames}")
    return [
        ExperimentRow(
            int(r["d"]),
            float(r["c_used"]),
            int(r["seed_count"]),
            int(r["minimized_count"]),
            float(r["cmo_floor"]),
            int(r["attempts"]),
            float(r["verify_millis"]),
        )
        for r in reader
    ]
