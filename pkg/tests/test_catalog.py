"""Catalog table integrity, the verification pipeline, and report plumbing."""

import json

import pytest

from rank3.catalog import (
    CatalogEntry,
    IsoClaim,
    Report,
    StageOutcome,
    builtin_catalog,
    catalog_lookup,
    entry_from_dict,
    entry_to_dict,
    load_catalog,
    reports_from_json,
    reports_to_json,
    verify_all,
    verify_entry,
)
from rank3.families import family_graph, family_group, parse_descriptor
from rank3.permgrp import schreier_sims

CATALOG = builtin_catalog()
BY_ID = {e.id: e for e in CATALOG}


def _replace(entry, **kw):
    fields = {
        "id": entry.id,
        "family": entry.family,
        "n": entry.n,
        "subdegrees": entry.subdegrees,
        "expected_aut_order": entry.expected_aut_order,
        "group_name": entry.group_name,
        "iso_claims": entry.iso_claims,
        "tier": entry.tier,
        "source": entry.source,
    }
    fields.update(kw)
    return CatalogEntry(**fields)


class TestCatalogTable:
    def test_at_least_25_entries(self):
        assert len(CATALOG) >= 25

    def test_ids_unique_and_roundtrip_descriptors(self):
        assert len(BY_ID) == len(CATALOG)
        for e in CATALOG:
            assert parse_descriptor(e.id) == e.family

    def test_full_tier_degree_bound(self):
        for e in CATALOG:
            if e.tier == "FULL":
                assert e.n <= 256

    def test_lookup_peisert_49(self):
        e = catalog_lookup("peisert:49")
        assert e.subdegrees == (24, 24)
        assert e.expected_aut_order == 3528

    def test_lookup_missing_raises(self):
        with pytest.raises(KeyError):
            catalog_lookup("paley:9999")

    def test_subdegrees_sum_checked_at_load(self):
        for e in CATALOG:
            assert sum(e.subdegrees) == e.n - 1

    def test_known_orders_divisible_by_n(self):
        for e in CATALOG:
            if e.expected_aut_order is not None:
                assert e.expected_aut_order % e.n == 0

    def test_iso_claim_targets_parse(self):
        for e in CATALOG:
            for claim in e.iso_claims:
                parse_descriptor(claim.other)

    def test_invalid_subdegrees_rejected(self):
        with pytest.raises(ValueError, match="sum to"):
            _replace(BY_ID["paley:13"], subdegrees=(6, 7))

    def test_non_multiple_order_rejected(self):
        with pytest.raises(ValueError, match="multiple"):
            _replace(BY_ID["paley:13"], expected_aut_order=77)

    def test_order_exceeding_factorial_rejected(self):
        # 13^2 is a multiple of 13 but 13! contains only one factor of 13
        with pytest.raises(ValueError, match="divide n!"):
            _replace(BY_ID["paley:13"], expected_aut_order=13 * 13)

    def test_bad_tier_rejected(self):
        with pytest.raises(ValueError, match="tier"):
            _replace(BY_ID["paley:13"], tier="FAST")

    def test_bad_iso_target_rejected(self):
        with pytest.raises(ValueError):
            IsoClaim("nosuch:7", True)

    def test_entry_dict_roundtrip(self):
        for e in CATALOG:
            assert entry_from_dict(entry_to_dict(e)) == e

    def test_load_catalog_file(self, tmp_path):
        path = tmp_path / "cat.json"
        path.write_text(json.dumps([entry_to_dict(e) for e in CATALOG[:3]]))
        assert load_catalog(path) == CATALOG[:3]

    def test_load_catalog_rejects_non_list(self, tmp_path):
        path = tmp_path / "cat.json"
        path.write_text(json.dumps({"id": "x"}))
        with pytest.raises(ValueError, match="list"):
            load_catalog(path)


class TestVerifyEntry:
    def test_vls_16_3_passes_with_order_1920(self):
        report = verify_entry(BY_ID["vls:16:3"], budget=60.0)
        assert report.verdict == "PASS"
        assert "1920" in report.stages["aut"].detail
        assert "isomorphic" in report.stages["iso"].detail

    def test_peisert_49_passes_including_non_isomorphism(self):
        report = verify_entry(BY_ID["peisert:49"], budget=60.0)
        assert report.verdict == "PASS"
        assert "not isomorphic" in report.stages["iso"].detail

    def test_params_only_skips_solver_stages(self):
        report = verify_entry(BY_ID["hq:2:5"], budget=60.0)
        assert report.verdict == "PASS"
        assert report.stages["aut"].status == "skipped"
        assert report.stages["iso"].status == "skipped"
        assert report.stages["srg"].status == "ok"
        assert "93" in report.stages["srg"].detail

    def test_corrupted_expected_order_fails(self):
        bad = _replace(BY_ID["paley:13"], expected_aut_order=13 * 2)
        report = verify_entry(bad, budget=60.0)
        assert report.verdict == "FAIL"
        assert report.stages["aut"].status == "mismatch"
        # the solver's value is reported for adjudication
        assert "78" in report.stages["aut"].detail

    def test_corrupted_subdegrees_fail(self):
        bad = _replace(BY_ID["paley:13"], subdegrees=(4, 8))
        report = verify_entry(bad, budget=60.0)
        assert report.verdict == "FAIL"
        assert report.stages["subdegrees"].status == "mismatch"

    def test_zero_budget_downgrades_not_fails(self):
        report = verify_entry(BY_ID["paley:13"], budget=0.0)
        assert report.verdict == "PASS_DOWNGRADED"
        assert report.stages["aut"].status == "timeout"

    def test_unknown_expected_order_records_solver_value(self):
        entry = _replace(
            BY_ID["paley:13"],
            expected_aut_order=None,
            iso_claims=(),
        )
        report = verify_entry(entry, budget=60.0)
        assert report.verdict == "PASS"
        assert "computed order 78" in report.stages["aut"].detail

    def test_solver_order_divisible_by_known_group_order(self):
        # the constructed rank-3 group embeds in the full automorphism group
        for eid in ("vls:16:3", "orbital:q8:13", "vo:-:6:2"):
            entry = BY_ID[eid]
            group_order = schreier_sims(family_group(entry.family)).order
            assert entry.expected_aut_order % group_order == 0


class TestVerifyAll:
    def test_tiny_full_sweep_passes(self):
        entries = [BY_ID["paley:13"], BY_ID["paley:17"], BY_ID["vls:16:3"]]
        reports, summary = verify_all(tier="full", budget=60.0, entries=entries)
        assert [r.id for r in reports] == ["paley:13", "paley:17", "vls:16:3"]
        assert summary == {"pass": 3, "pass_downgraded": 0, "fail": 0}

    def test_tier_filtering(self):
        entries = [BY_ID["paley:13"], BY_ID["peisert:81"], BY_ID["hq:2:5"]]
        full, _ = verify_all(tier="full", budget=0.1, entries=entries)
        assert [r.id for r in full] == ["paley:13"]
        slow, _ = verify_all(tier="slow", budget=0.1, entries=entries)
        assert [r.id for r in slow] == ["paley:13", "peisert:81"]

    def test_empty_filter_match(self):
        reports, summary = verify_all(
            tier="full", budget=1.0, entries=[BY_ID["hq:2:5"]]
        )
        assert reports == []
        assert summary == {"pass": 0, "pass_downgraded": 0, "fail": 0}

    def test_unknown_tier_rejected(self):
        with pytest.raises(ValueError, match="tier filter"):
            verify_all(tier="everything", entries=[])

    def test_fault_injection_exactly_one_fail(self):
        entries = [
            BY_ID["paley:13"],
            _replace(BY_ID["paley:17"], expected_aut_order=17 * 4),
        ]
        reports, summary = verify_all(tier="full", budget=60.0, entries=entries)
        assert summary["fail"] == 1
        assert [r.verdict for r in reports] == ["PASS", "FAIL"]

    def test_construction_error_becomes_fail_report(self):
        # van_lint_schrijver rejects e = 4 at q = 13 (order condition);
        # the sweep must absorb the error, not crash
        bad = CatalogEntry(
            id="vls:13:4",
            family=parse_descriptor("vls:13:4"),
            n=13,
            subdegrees=(3, 9),
            expected_aut_order=None,
            group_name="none",
            iso_claims=(),
            tier="FULL",
            source="fault injection",
        )
        reports, summary = verify_all(tier="full", budget=1.0, entries=[bad])
        assert summary["fail"] == 1
        assert reports[0].stages["construct"].status == "error"

    def test_verify_entry_propagates_construction_error(self):
        bad = CatalogEntry(
            id="vls:13:4",
            family=parse_descriptor("vls:13:4"),
            n=13,
            subdegrees=(3, 9),
            expected_aut_order=None,
            group_name="none",
            iso_claims=(),
            tier="FULL",
            source="fault injection",
        )
        with pytest.raises(Exception):
            verify_entry(bad, budget=1.0)


class TestReports:
    def test_json_roundtrip_lossless(self):
        reports, summary = verify_all(
            tier="full",
            budget=60.0,
            entries=[BY_ID["paley:13"], BY_ID["vls:16:3"]],
        )
        text = reports_to_json(reports)
        back, back_summary = reports_from_json(text)
        assert back == reports
        assert back_summary == summary

    def test_json_shape(self):
        reports, _ = verify_all(
            tier="full", budget=60.0, entries=[BY_ID["paley:13"]]
        )
        items = json.loads(reports_to_json(reports))
        assert items[0]["id"] == "paley:13"
        assert set(items[0]) == {"id", "stages", "timings_ms", "verdict"}
        assert "summary" in items[-1]

    def test_reports_from_json_requires_summary(self):
        with pytest.raises(ValueError, match="summary"):
            reports_from_json(json.dumps([{"id": "x"}]))

    def test_verdict_rules(self):
        ok = StageOutcome("ok", "")
        assert Report("x", {"a": ok}, {}, "PASS").verdict == "PASS"
        reports, _ = verify_all(
            tier="full", budget=0.0, entries=[BY_ID["paley:13"]]
        )
        assert reports[0].verdict == "PASS_DOWNGRADED"


@pytest.mark.slow
class TestBuiltinSweeps:
    def test_full_tier_zero_fail(self):
        reports, summary = verify_all(tier="full", budget=120.0)
        assert summary["fail"] == 0
        assert summary["pass"] == len(reports)

    def test_slow_tier_no_fail(self):
        _, summary = verify_all(tier="slow", budget=120.0)
        assert summary["fail"] == 0
