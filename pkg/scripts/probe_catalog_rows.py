#!/usr/bin/env python3
"""One-off probe used while freezing the builtin catalog: construct every
planned row, print SRG parameters, graph valency, and the group-side
rank/subdegrees, so the shipped table is validated end to end before it is
written down.  Also computes the solver order for orbital:q8:17 (the one
mid-size row whose full order had not been cross-checked yet).
"""

from __future__ import annotations

import time

from rank3.autsolve import Timeout, automorphism_group
from rank3.families import (
    _orbital_spec,
    family_graph,
    family_group,
    parse_descriptor,
)
from rank3.graphs import srg_params
from rank3.permgrp import linear_perms, orbit_partition, rank_and_subdegrees

ROWS = [
    "paley:9",
    "paley:13",
    "paley:17",
    "paley:49",
    "paley:81",
    "peisert:49",
    "peisert:81",
    "vls:16:3",
    "vls:25:3",
    "vls:64:3",
    "vls:256:5",
    "hamming2:5",
    "hamming2:9",
    "vo:-:4:2",
    "vo:-:6:2",
    "vo:+:4:3",
    "vo:+:8:2",
    "hq:3:3",
    "hq:2:5",
    "a52",
    "hq:4:3",
    "orbital:sl23:7",
    "orbital:q8:13",
    "orbital:q8:17",
    "orbital:q8:19",
    "orbital:sl23:23",
    "orbital:extraspecial:625",
    "orbital:q8:29",
    "orbital:q8:31",
    "orbital:sl25:31",
    "orbital:sl25:41",
    "orbital:q8:47",
    "orbital:extraspecial:2401",
    "orbital:sl25:71",
    "orbital:sl25:79",
    "orbital:extraspecial:6561",
    "orbital:sl25:89",
]


def main() -> None:
    for desc in ROWS:
        fid = parse_descriptor(desc)
        t0 = time.monotonic()
        g = family_graph(fid)
        t_build = time.monotonic() - t0
        params = srg_params(g)
        valency = int(g.adj[0].sum())
        t_srg = time.monotonic() - t0 - t_build

        t0 = time.monotonic()
        if g.n <= 4096:
            gs = family_group(fid)
            if gs is None:
                sub = "no-group"
            else:
                rank, sizes = rank_and_subdegrees(gs)
                sub = f"rank={rank} subdegrees={sizes}"
        else:
            spec = _orbital_spec(fid.params)
            orbits = [
                o for o in orbit_partition(linear_perms(spec))
                if len(o) > 1 or o[0] != 0
            ]
            sub = f"stab-orbits={sorted(len(o) for o in orbits)}"
        t_grp = time.monotonic() - t0

        print(
            f"{desc:28s} n={g.n:<5d} k={valency:<5d} srg={params} {sub}"
            f"  [build {t_build:.1f}s, srg {t_srg:.1f}s, group {t_grp:.1f}s]",
            flush=True,
        )

    g = family_graph(parse_descriptor("orbital:q8:17"))
    t0 = time.monotonic()
    try:
        r = automorphism_group(g, budget=240.0)
        print(
            f"orbital:q8:17 solver order = {r.order} "
            f"({time.monotonic() - t0:.1f}s, nodes={r.nodes})",
            flush=True,
        )
    except Timeout:
        print("orbital:q8:17 solver: timeout at 240s", flush=True)


if __name__ == "__main__":
    main()
