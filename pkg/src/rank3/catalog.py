"""Curated verification targets and the end-to-end checking pipeline.

Each CatalogEntry pins down one graph: its family descriptor, degree,
subdegrees, the expected full automorphism group order (when known), and any
isomorphism claims against other families.  verify_entry runs the pipeline

    construct -> strong regularity -> rank/subdegrees -> aut order -> iso

and emits a machine-readable Report; verify_all filters by tier and
aggregates.  Tiers bound the cost: FULL rows (degree <= 256) run everything,
SLOW rows run everything but may time out (downgrading, never failing, the
verdict), PARAMS_ONLY rows stop after the subdegree check.

Conventions baked into the table:

* entry ids are exactly the family descriptors accepted by parse_descriptor;
* subdegree pairs are stored with the constructed graph's edge orbital FIRST
  (for every shipped row but vo:+:8:2 that is also the smaller one), so the
  valency cross-check is ``valency == subdegrees[0]``;
* expected orders are explicit integers with the arithmetic recorded in the
  source string -- they are never recomputed from group-name strings at
  runtime.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass

from .autsolve import NotIsomorphic, Timeout, are_isomorphic, automorphism_group
from .families import (
    FamilyId,
    affine_orbital_graph,
    family_graph,
    family_group,
    family_matrix_spec,
    format_descriptor,
    parse_descriptor,
    sl25_with_scalars_spec,
)
from .graphs import Degenerate, DenseGraph, NotStronglyRegular, srg_params
from .permgrp import linear_perms, orbit_partition, rank_and_subdegrees

__all__ = [
    "TIERS",
    "STAGES",
    "VERDICTS",
    "IsoClaim",
    "CatalogEntry",
    "StageOutcome",
    "Report",
    "builtin_catalog",
    "catalog_lookup",
    "entry_to_dict",
    "entry_from_dict",
    "load_catalog",
    "verify_entry",
    "verify_all",
    "reports_to_json",
    "reports_from_json",
]

TIERS = ("FULL", "SLOW", "PARAMS_ONLY")
STAGES = ("construct", "srg", "subdegrees", "aut", "iso")
VERDICTS = ("PASS", "PASS_DOWNGRADED", "FAIL")

# The pair-orbit closure is quadratic in the vertex count; past this degree
# the subdegree stage falls back to the zero-stabilizer orbit sizes.
_PAIR_CLOSURE_LIMIT = 4096


@dataclass(frozen=True)
class IsoClaim:
    """The target graph must (isomorphic=True) or must not (False) be
    isomorphic to the graph of the entry carrying the claim."""

    other: str
    isomorphic: bool

    def __post_init__(self) -> None:
        parse_descriptor(self.other)  # fail fast on malformed targets


@dataclass(frozen=True)
class CatalogEntry:
    """One verification target; invariants are checked on construction."""

    id: str
    family: FamilyId
    n: int
    subdegrees: tuple[int, int]
    expected_aut_order: int | None
    group_name: str
    iso_claims: tuple[IsoClaim, ...]
    tier: str
    source: str

    def __post_init__(self) -> None:
        if self.tier not in TIERS:
            raise ValueError(f"unknown tier {self.tier!r}, want one of {TIERS}")
        if len(self.subdegrees) != 2 or sum(self.subdegrees) != self.n - 1:
            raise ValueError(
                f"{self.id}: subdegrees {self.subdegrees} do not sum to n-1 = "
                f"{self.n - 1}"
            )
        order = self.expected_aut_order
        if order is not None:
            if order < 1 or order % self.n:
                raise ValueError(
                    f"{self.id}: expected order {order} is not a positive "
                    f"multiple of n = {self.n} (vertex-transitivity)"
                )
            if math.factorial(self.n) % order:
                raise ValueError(
                    f"{self.id}: expected order {order} does not divide n!"
                )


def _entry(
    descriptor: str,
    n: int,
    subdegrees: tuple[int, int],
    order: int | None,
    group_name: str,
    tier: str,
    source: str,
    iso: tuple[IsoClaim, ...] = (),
) -> CatalogEntry:
    return CatalogEntry(
        id=descriptor,
        family=parse_descriptor(descriptor),
        n=n,
        subdegrees=subdegrees,
        expected_aut_order=order,
        group_name=group_name,
        iso_claims=iso,
        tier=tier,
        source=source,
    )


def builtin_catalog() -> list[CatalogEntry]:
    """The shipped verification targets (37 entries).

    Every stored subdegree pair and every expected order marked
    "solver-confirmed" has been recomputed from scratch by this package's own
    pipeline; the remaining orders are products of the component orders of
    the classical group names in the source strings.
    """
    e = _entry
    iso = IsoClaim
    return [
        # ---- FULL tier: degree <= 256, the whole pipeline runs -------------
        e(
            "paley:9", 9, (4, 4), 72,
            "9:(4:2) = index-2 subgroup of AGammaL_1(9)", "FULL",
            "square-residue graph on GF(9); order 9*4*2, solver-confirmed",
            (iso("peisert:9", True),),
        ),
        e(
            "paley:13", 13, (6, 6), 78,
            "13:6 = AGL_1(13) index 2", "FULL",
            "prime-field positive control: one-dimensional closure, 13*6",
        ),
        e(
            "paley:17", 17, (8, 8), 136,
            "17:8 = AGL_1(17) index 2", "FULL",
            "prime-field positive control: one-dimensional closure, 17*8",
        ),
        e(
            "paley:49", 49, (24, 24), 2352,
            "7^2:(3 x D_16)", "FULL",
            "exceptional closure, dihedral part of order 16: 49*3*16 = 2352; "
            "solver-confirmed",
        ),
        e(
            "paley:81", 81, (40, 40), 12960,
            "81:(40:4) <= AGammaL_1(81)", "FULL",
            "one-dimensional semilinear closure 81*40*4 = 12960; "
            "solver-confirmed",
        ),
        e(
            "peisert:49", 49, (24, 24), 3528,
            "7^2:(3 x SL_2(3))", "FULL",
            "exceptional closure: 49*(3*24) = 3528; solver-confirmed",
            (iso("paley:49", False),),
        ),
        e(
            "vls:16:3", 16, (5, 10), 1920,
            "2^4:Sym(5)", "FULL",
            "cubic-residue graph on GF(16) = Clebsch graph: 16*120 = 1920; "
            "solver-confirmed",
            (iso("vo:-:4:2", True),),
        ),
        e(
            "vls:25:3", 25, (8, 16), 28800,
            "(Sym(5) x Sym(5)):2", "FULL",
            "cubic residues on GF(25) = 5x5 rook graph: (120^2)*2 = 28800; "
            "solver-confirmed",
            (iso("hamming2:5", True),),
        ),
        e(
            "vls:64:3", 64, (21, 42), 64512,
            "2^6:(Sym(3) x L_3(2))", "FULL",
            "cubic residues on GF(64) = 2x3 matrix-rank graph: "
            "64*6*168 = 64512; solver-confirmed",
            (iso("hq:2:3", True),),
        ),
        e(
            "hamming2:5", 25, (8, 16), 28800,
            "(Sym(5) x Sym(5)):2", "FULL",
            "5x5 rook graph: (5!)^2 * 2 = 28800",
        ),
        e(
            "vo:-:4:2", 16, (5, 10), 1920,
            "2^4:GO_4^-(2)", "FULL",
            "minus-type quadric graph on GF(2)^4 = Clebsch graph: "
            "16*120 = 1920",
        ),
        e(
            "vo:-:6:2", 64, (27, 36), 3317760,
            "2^6:GO_6^-(2)", "FULL",
            "minus-type quadric graph on GF(2)^6: 64*51840 = 3317760",
        ),
        e(
            "vo:+:8:2", 256, (135, 120), 89181388800,
            "2^8:SO_8^+(2)", "FULL",
            "plus-type quadric graph on GF(2)^8, valency 135 (the edge "
            "orbital is the larger subdegree): 256*348364800; "
            "solver-confirmed",
        ),
        e(
            "orbital:sl23:7", 49, (24, 24), 3528,
            "7^2:(3 x SL_2(3))", "FULL",
            "explicit index-2 subgroup of the quaternion normalizer with odd "
            "scalars; 49*72 = 3528, solver-confirmed; the graph coincides "
            "with the Peisert graph of order 49",
            (iso("peisert:49", True),),
        ),
        e(
            "orbital:q8:13", 169, (72, 96), 48672,
            "13^2:(3 x (SL_2(3):4))", "FULL",
            "quaternion-normalizer orbital graph: 169*288 = 48672; "
            "solver-confirmed",
        ),
        # ---- SLOW tier: solver runs under budget, Timeout downgrades -------
        e(
            "hamming2:9", 81, (16, 64), 263363788800,
            "(Sym(9) x Sym(9)):2", "SLOW",
            "9x9 rook graph: (9!)^2 * 2 = 263363788800; solver-confirmed",
            (iso("vls:81:5", True),),
        ),
        e(
            "peisert:81", 81, (40, 40), 38880,
            "3^4:(SL_2(5):2^2)", "SLOW",
            "exceptional closure: 81*120*4 = 38880; solver-confirmed",
            (iso("paley:81", False),),
        ),
        e(
            "vo:+:4:3", 81, (32, 48), 186624,
            "3^4:GammaO_4^+(3)", "SLOW",
            "plus-type quadric graph on GF(3)^4; order catalogued from the "
            "first verified solver run (186624, matching the similitude "
            "arithmetic 81*2304)",
        ),
        e(
            "vls:256:5", 256, (51, 204), 12533760,
            "2^8:(3 x SL_2(16)):4", "SLOW",
            "quintic-residue graph on GF(256): 256*3*4080*4 = 12533760; "
            "solver-confirmed",
        ),
        e(
            "orbital:q8:17", 289, (96, 192), 110976,
            "17^2:N(Q_8), |N| = 384", "SLOW",
            "quaternion-normalizer orbital graph: 289*384 = 110976; "
            "solver-confirmed",
        ),
        e(
            "hq:3:3", 729, (104, 624), 196515072,
            "3^6:(L_3(3) x GL_2(3))", "SLOW",
            "2x3 matrix graph over GF(3), rank-1 difference adjacency: "
            "729*5616*48 = 196515072",
        ),
        e(
            "orbital:sl25:41", 1681, (480, 1200), 4034400,
            "41^2:(40 o SL_2(5))", "SLOW",
            "icosahedral zero-stabilizer with full scalars, central product "
            "sharing the central involution: 1681*(40*120/2) = 4034400",
        ),
        # ---- PARAMS_ONLY tier: construct + SRG + subdegrees only -----------
        e(
            "hq:2:5", 1024, (93, 930), None,
            "2^10:(GL_2(2) x GL_5(2))", "PARAMS_ONLY",
            "2x5 matrix graph over GF(2), valency (2^2-1)(2^5-1) = 93",
        ),
        e(
            "a52", 1024, (155, 868), None,
            "2^10:L_5(2)", "PARAMS_ONLY",
            "alternating-forms graph on 5x5 skew-symmetric matrices over "
            "GF(2), valency 155",
        ),
        e(
            "hq:4:3", 4096, (315, 3780), None,
            "(GL_2(4) x GL_3(4)):2 over GF(4)", "PARAMS_ONLY",
            "2x3 matrix graph over GF(4) on 4096 = 2^12 points (one source "
            "prints the degree as 4098, an evident typo); direct- vs "
            "central-product readings give candidate orders 4096*65318400 "
            "and 4096*21772800 -- both recorded, not adjudicated",
        ),
        e(
            "orbital:q8:19", 361, (144, 216), 155952,
            "19^2:(9 x GL_2(3))", "PARAMS_ONLY",
            "quaternion-normalizer orbital graph: 361*432 = 155952",
        ),
        e(
            "orbital:sl23:23", 529, (264, 264), 139656,
            "23^2:(11 x SL_2(3))", "PARAMS_ONLY",
            "explicit index-2 subgroup of the quaternion normalizer with odd "
            "scalars: 529*264 = 139656",
        ),
        e(
            "orbital:extraspecial:625", 625, (240, 384), 28800000,
            "5^4:((4 o 2^(1+4)).Sp_4(2))", "PARAMS_ONLY",
            "extraspecial-normalizer data file (scripts/"
            "derive_extraspecial_rows.py): 625*46080 = 28800000",
        ),
        e(
            "orbital:q8:29", 841, (168, 672), 565152,
            "29^2:(7 x (SL_2(3):4))", "PARAMS_ONLY",
            "quaternion-normalizer orbital graph: 841*672 = 565152",
        ),
        e(
            "orbital:q8:31", 961, (240, 720), 691920,
            "31^2:(15 x (2.Sym(4)))", "PARAMS_ONLY",
            "quaternion-normalizer orbital graph: 961*720 = 691920",
        ),
        e(
            "orbital:sl25:31", 961, (360, 600), 1729800,
            "31^2:(15 x SL_2(5))", "PARAMS_ONLY",
            "icosahedral zero-stabilizer with order-15 scalars: "
            "961*1800 = 1729800",
        ),
        e(
            "orbital:q8:47", 2209, (1104, 1104), 2438736,
            "47^2:(23 x GL_2(3))", "PARAMS_ONLY",
            "quaternion-normalizer orbital graph, regular orbits: "
            "2209*1104 = 2438736",
        ),
        e(
            "orbital:extraspecial:2401", 2401, (480, 1920), 27659520,
            "7^4:((6 o 2^(1+4)_-).O_4^-(2))", "PARAMS_ONLY",
            "extraspecial-normalizer data file: 2401*11520 = 27659520",
        ),
        e(
            "orbital:sl25:71", 5041, (840, 4200), 21172200,
            "71^2:(35 x SL_2(5))", "PARAMS_ONLY",
            "icosahedral zero-stabilizer with order-35 scalars: "
            "5041*4200 = 21172200 (the printed group name carries a 79^2 "
            "prefix inconsistent with the degree; stored under 71^2, whose "
            "subdegrees match)",
        ),
        e(
            "orbital:sl25:79", 6241, (1560, 4680), 29207880,
            "79^2:(39 x SL_2(5))", "PARAMS_ONLY",
            "icosahedral zero-stabilizer with order-39 scalars: "
            "6241*4680 = 29207880",
        ),
        e(
            "orbital:extraspecial:6561", 6561, (1440, 5120), 43535646720,
            "3^8:((2 o 2^(1+6)_-).O_6^-(2))", "PARAMS_ONLY",
            "extraspecial-normalizer data file: 6561*6635520 = 43535646720",
        ),
        e(
            "orbital:sl25:89", 7921, (2640, 5280), 41822880,
            "89^2:(88 o SL_2(5))", "PARAMS_ONLY",
            "icosahedral zero-stabilizer with full scalars (central "
            "product): 7921*5280 = 41822880",
        ),
    ]


def catalog_lookup(entry_id: str, entries: list[CatalogEntry] | None = None) -> CatalogEntry:
    """The entry whose id matches, from the builtin catalog by default."""
    for entry in builtin_catalog() if entries is None else entries:
        if entry.id == entry_id:
            return entry
    raise KeyError(f"no catalog entry with id {entry_id!r}")


# -- entry (de)serialization --------------------------------------------------------


def entry_to_dict(entry: CatalogEntry) -> dict:
    return {
        "id": entry.id,
        "family": format_descriptor(entry.family),
        "n": entry.n,
        "subdegrees": list(entry.subdegrees),
        "expected_aut_order": entry.expected_aut_order,
        "group_name": entry.group_name,
        "iso_claims": [
            {"other": c.other, "isomorphic": c.isomorphic} for c in entry.iso_claims
        ],
        "tier": entry.tier,
        "source": entry.source,
    }


def entry_from_dict(data: dict) -> CatalogEntry:
    return CatalogEntry(
        id=data["id"],
        family=parse_descriptor(data["family"]),
        n=int(data["n"]),
        subdegrees=(int(data["subdegrees"][0]), int(data["subdegrees"][1])),
        expected_aut_order=(
            None
            if data.get("expected_aut_order") is None
            else int(data["expected_aut_order"])
        ),
        group_name=data.get("group_name", ""),
        iso_claims=tuple(
            IsoClaim(c["other"], bool(c["isomorphic"]))
            for c in data.get("iso_claims", ())
        ),
        tier=data["tier"],
        source=data.get("source", ""),
    )


def load_catalog(path) -> list[CatalogEntry]:
    """Read a catalog override file: a JSON list of entry objects."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, list):
        raise ValueError("catalog file must hold a JSON list of entries")
    return [entry_from_dict(item) for item in data]


# -- reports -------------------------------------------------------------------------


@dataclass(frozen=True)
class StageOutcome:
    """status: ok | mismatch | error | timeout | skipped."""

    status: str
    detail: str


@dataclass(frozen=True)
class Report:
    """Per-entry pipeline outcome.  FAIL iff an attempted stage mismatched or
    errored; PASS_DOWNGRADED iff nothing failed but a stage timed out."""

    id: str
    stages: dict[str, StageOutcome]
    timings_ms: dict[str, float]
    verdict: str


def _verdict(stages: dict[str, StageOutcome]) -> str:
    statuses = {outcome.status for outcome in stages.values()}
    if statuses & {"mismatch", "error"}:
        return "FAIL"
    if "timeout" in statuses:
        return "PASS_DOWNGRADED"
    return "PASS"


def report_to_dict(report: Report) -> dict:
    return {
        "id": report.id,
        "stages": {
            name: {"status": o.status, "detail": o.detail}
            for name, o in report.stages.items()
        },
        "timings_ms": dict(report.timings_ms),
        "verdict": report.verdict,
    }


def report_from_dict(data: dict) -> Report:
    return Report(
        id=data["id"],
        stages={
            name: StageOutcome(o["status"], o["detail"])
            for name, o in data["stages"].items()
        },
        timings_ms={k: float(v) for k, v in data["timings_ms"].items()},
        verdict=data["verdict"],
    )


def summarize(reports: list[Report]) -> dict:
    return {
        "pass": sum(r.verdict == "PASS" for r in reports),
        "pass_downgraded": sum(r.verdict == "PASS_DOWNGRADED" for r in reports),
        "fail": sum(r.verdict == "FAIL" for r in reports),
    }


def reports_to_json(reports: list[Report]) -> str:
    """One object per entry, with the summary object appended last."""
    items = [report_to_dict(r) for r in reports]
    items.append({"summary": summarize(reports)})
    return json.dumps(items, indent=2)


def reports_from_json(text: str) -> tuple[list[Report], dict]:
    items = json.loads(text)
    if not items or "summary" not in items[-1]:
        raise ValueError("report JSON must end with a summary object")
    return [report_from_dict(d) for d in items[:-1]], items[-1]["summary"]


# -- the pipeline --------------------------------------------------------------------


def _construct(entry: CatalogEntry, seed: int | None) -> DenseGraph:
    fid = entry.family
    if (
        seed is not None
        and fid.tag == "AffineOrbital"
        and fid.params[0] == "sl25"
    ):
        return affine_orbital_graph(sl25_with_scalars_spec(fid.params[1], seed))
    return family_graph(fid)


def _check_subdegrees(entry: CatalogEntry, g: DenseGraph) -> StageOutcome:
    valency = int(g.adj[0].sum())
    if valency != entry.subdegrees[0]:
        return StageOutcome(
            "mismatch",
            f"graph valency {valency} != claimed edge-orbital size "
            f"{entry.subdegrees[0]}",
        )
    claimed = sorted(entry.subdegrees)
    if entry.n <= _PAIR_CLOSURE_LIMIT:
        gs = family_group(entry.family)
        if gs is None:
            return StageOutcome(
                "ok",
                f"valency {valency} matches; no independent group ships for "
                f"this family, pair-orbit check skipped",
            )
        rank, sizes = rank_and_subdegrees(gs)
        if rank != 3:
            return StageOutcome("mismatch", f"group rank {rank} != 3")
        if sorted(sizes) != claimed:
            return StageOutcome(
                "mismatch", f"group subdegrees {sorted(sizes)} != {claimed}"
            )
        return StageOutcome(
            "ok", f"rank 3, subdegrees {claimed}, valency {valency}"
        )
    spec = family_matrix_spec(entry.family)
    if spec is None:
        return StageOutcome(
            "ok",
            f"valency {valency} matches; degree exceeds the pair-closure "
            f"limit and no matrix group ships",
        )
    orbits = [
        o
        for o in orbit_partition(linear_perms(spec))
        if len(o) > 1 or int(o[0]) != 0
    ]
    sizes = sorted(len(o) for o in orbits)
    if len(sizes) != 2 or sizes != claimed:
        return StageOutcome(
            "mismatch", f"zero-stabilizer orbit sizes {sizes} != {claimed}"
        )
    return StageOutcome(
        "ok", f"zero-stabilizer orbits {claimed}, valency {valency}"
    )


def _check_aut(entry: CatalogEntry, g: DenseGraph, budget: float) -> StageOutcome:
    try:
        result = automorphism_group(g, budget=budget)
    except Timeout:
        return StageOutcome("timeout", f"no order within {budget:g}s")
    if entry.expected_aut_order is None:
        return StageOutcome(
            "ok", f"computed order {result.order} (no expected value on file)"
        )
    if result.order != entry.expected_aut_order:
        return StageOutcome(
            "mismatch",
            f"solver order {result.order} != expected "
            f"{entry.expected_aut_order} (solver value reported for "
            f"adjudication)",
        )
    return StageOutcome("ok", f"order {result.order}")


def _check_iso(entry: CatalogEntry, g: DenseGraph, budget: float) -> StageOutcome:
    if not entry.iso_claims:
        return StageOutcome("ok", "no isomorphism claims")
    parts: list[str] = []
    status = "ok"
    for claim in entry.iso_claims:
        other = family_graph(parse_descriptor(claim.other))
        want = "iso" if claim.isomorphic else "non-iso"
        try:
            are_isomorphic(g, other, budget=budget)
            got_iso = True
            note = "isomorphic (mapping verified)"
        except NotIsomorphic as exc:
            got_iso = False
            note = f"not isomorphic ({exc.invariant})"
        except Timeout:
            parts.append(f"{claim.other}: undecided within {budget:g}s")
            if status == "ok":
                status = "timeout"
            continue
        if got_iso == claim.isomorphic:
            parts.append(f"{claim.other}: {note}, as claimed")
        else:
            parts.append(f"{claim.other}: {note}, but claim says {want}")
            status = "mismatch"
    return StageOutcome(status, "; ".join(parts))


def verify_entry(
    entry: CatalogEntry, budget: float = 60.0, seed: int | None = None
) -> Report:
    """Run the pipeline on one entry.

    Construction errors propagate (a catalog row that cannot build is a
    malformed row, not a verification outcome); Timeout in the solver stages
    downgrades the verdict instead.  PARAMS_ONLY rows skip the aut and iso
    stages.
    """
    stages: dict[str, StageOutcome] = {}
    timings: dict[str, float] = {}

    def run(name: str, fn) -> StageOutcome:
        t0 = time.monotonic()
        outcome = fn()
        timings[name] = round((time.monotonic() - t0) * 1000.0, 3)
        stages[name] = outcome
        return outcome

    g = _construct(entry, seed)

    def construct_outcome() -> StageOutcome:
        if g.n != entry.n:
            return StageOutcome(
                "mismatch", f"built {g.n} vertices, entry says {entry.n}"
            )
        return StageOutcome("ok", f"{g.n} vertices")

    run("construct", construct_outcome)

    def srg_outcome() -> StageOutcome:
        try:
            params = srg_params(g)
        except (NotStronglyRegular, Degenerate) as exc:
            return StageOutcome("mismatch", f"not strongly regular: {exc}")
        return StageOutcome(
            "ok",
            f"srg({params.n}, {params.k}, {params.lam}, {params.mu})",
        )

    run("srg", srg_outcome)
    run("subdegrees", lambda: _check_subdegrees(entry, g))

    if entry.tier == "PARAMS_ONLY":
        stages["aut"] = StageOutcome("skipped", "params-only tier")
        stages["iso"] = StageOutcome("skipped", "params-only tier")
    else:
        run("aut", lambda: _check_aut(entry, g, budget))
        run("iso", lambda: _check_iso(entry, g, budget))

    return Report(
        id=entry.id,
        stages=stages,
        timings_ms=timings,
        verdict=_verdict(stages),
    )


def _tier_selected(entry_tier: str, tier_filter: str) -> bool:
    if tier_filter == "full":
        return entry_tier == "FULL"
    if tier_filter == "slow":
        return entry_tier in ("FULL", "SLOW")
    if tier_filter == "all":
        return True
    raise ValueError(f"unknown tier filter {tier_filter!r}, want full|slow|all")


def verify_all(
    tier: str = "full",
    budget: float = 60.0,
    seed: int | None = None,
    entries: list[CatalogEntry] | None = None,
) -> tuple[list[Report], dict]:
    """Verify every selected entry in catalog order; returns (reports, summary).

    Unlike verify_entry, a construction failure here becomes a FAIL report
    (the run must always produce a complete summary).
    """
    if tier not in ("full", "slow", "all"):
        raise ValueError(f"unknown tier filter {tier!r}, want full|slow|all")
    if entries is None:
        entries = builtin_catalog()
    selected = [e for e in entries if _tier_selected(e.tier, tier)]
    reports: list[Report] = []
    for entry in selected:
        try:
            reports.append(verify_entry(entry, budget=budget, seed=seed))
        except Exception as exc:  # noqa: BLE001 -- any stage blowup is a FAIL
            reports.append(
                Report(
                    id=entry.id,
                    stages={
                        "construct": StageOutcome(
                            "error", f"{type(exc).__name__}: {exc}"
                        )
                    },
                    timings_ms={},
                    verdict="FAIL",
                )
            )
    return reports, summarize(reports)
