import json
import os
from itertools import combinations_with_replacement

import pytest

from cdj.chars import format_chartable
from cdj.covers import AutomorphismError, Signature, automorphism_map, genus_from_rh
from cdj.io import (
    DegreeOverflow,
    GroupFileError,
    format_group,
    format_vector,
    parse_group,
    parse_vector,
    read_automorphisms,
    read_schur_overrides,
)
from cdj.perm import Permutation
from cdj.search import (
    SearchJob,
    admissible_signatures,
    emit_table,
    group_paths_in,
    run_search,
)
from cdj.store import ChartableCache, ResultStore, default_cache_dir, sort_key

from helpers import GROUPS, copy_groups, load, table


def test_group_file_round_trip():
    g = load("g24_12")
    back = parse_group(format_group(g))
    assert back.order == 24 and back.label == "(24,12)"
    assert back.generators == g.generators


@pytest.mark.parametrize("text,line", [
    ("degree 4\nid x\n(1,2\n", 3),
    ("degree 4\nid x\n(1,5)\n", 3),
    ("# c\n\ndegree four\nid x\n", 3),
    ("degree 4\nlabel x\n", 2),
    ("degree 0\nid x\n", 1),
    ("id x\ndegree 4\n", 1),
])
def test_group_file_errors_carry_line(text, line):
    with pytest.raises(GroupFileError) as err:
        parse_group(text, "f.pg")
    assert err.value.line == line
    assert f"f.pg:{line}:" in str(err.value)


def test_group_file_too_short():
    with pytest.raises(GroupFileError):
        parse_group("degree 3\n")


def test_degree_cap():
    with pytest.raises(DegreeOverflow):
        parse_group("degree 20001\nid big\n")


def test_vector_file():
    g = load("g6_1")
    text = "# a vector\n(1,2)\n(2,3)\n(1,3,2)\n"
    vec = parse_vector(text, g)
    assert len(vec) == 3
    assert parse_vector(format_vector(vec), g) == vec
    with pytest.raises(GroupFileError) as err:
        parse_vector("(1,2)\n(1,4)\n", g)
    assert err.value.line == 2


def test_sidecars(tmp_path):
    p = tmp_path / "s.schur"
    p.write_text("# row index\n3 2\n")
    assert read_schur_overrides(p) == {3: 2}
    p.write_text("3\n")
    with pytest.raises(GroupFileError):
        read_schur_overrides(p)
    g = load("g8_5")
    a = tmp_path / "g.aut"
    gens = [x.to_cycle_string() for x in g.generators]
    a.write_text(";".join([gens[1], gens[0]] + gens[2:]) + "\n")
    auts = read_automorphisms(a, g)
    assert len(auts) == 1
    automorphism_map(g, auts[0])
    a.write_text(gens[0] + "\n")
    with pytest.raises(GroupFileError):
        read_automorphisms(a, g)


def test_automorphism_map_rejects_non_homomorphisms():
    g = load("g6_1")
    e = Permutation.identity(g.degree)
    with pytest.raises(AutomorphismError):
        automorphism_map(g, [e] * len(g.generators))


# --- cache -----------------------------------------------------------------

def test_cache_round_trip(tmp_path):
    g = load("g24_12")
    cache = ChartableCache(tmp_path)
    calls = []

    def compute():
        calls.append(1)
        return table("g24_12")

    t1 = cache.get_or_compute(g, g.classes, compute)
    t2 = cache.get_or_compute(g, g.classes, compute)
    assert len(calls) == 1
    assert [t1.value_keys(i) for i in range(len(t1))] == [t2.value_keys(i) for i in range(len(t2))]
    assert cache.path(g).exists()


def test_cache_revalidates(tmp_path):
    g = load("g24_12")
    cache = ChartableCache(tmp_path)
    cache.put(g, table("g24_12"))
    path = cache.path(g)
    lines = path.read_text().splitlines()
    lines[-1] = lines[-1].rsplit(" ", 1)[0] + " 5"
    path.write_text("\n".join(lines) + "\n")
    assert cache.get(g, g.classes) is None
    t = cache.get_or_compute(g, g.classes, lambda: table("g24_12"))
    assert path.read_text() == format_chartable(t, g.label)


def test_cache_key_depends_on_generators(tmp_path):
    a = load("g6_1")
    b = parse_group(format_group(a).replace("(6,1)", "(6,1)-other"))
    assert ChartableCache.key(a) != ChartableCache.key(b)


def test_default_cache_dir(monkeypatch, tmp_path):
    monkeypatch.setenv("CDJ_CACHE_DIR", str(tmp_path / "c"))
    assert default_cache_dir() == tmp_path / "c"
    monkeypatch.delenv("CDJ_CACHE_DIR")
    assert default_cache_dir().name == "cdj"


# --- search and store ------------------------------------------------------

def test_admissible_signatures_brute_force():
    orders = [1, 2, 3, 4, 6]
    got = admissible_signatures(24, orders, 3, 9)
    brute = set()
    for r in range(3, 8):
        for periods in combinations_with_replacement([2, 3, 4, 6], r):
            try:
                g = genus_from_rh(24, Signature(0, periods))
            except Exception:
                continue
            if 3 <= g <= 9:
                brute.add(periods)
    assert {s.periods for s in got} == brute
    assert len(got) == len(brute)


def test_result_store(tmp_path):
    store = ResultStore(tmp_path / "log.jsonl")
    recs = [
        {"kind": "decomposition", "genus": 5, "order": 8, "signature": "[0;2,2,2,2,2,2]",
         "group": "(8,5)", "factors": [[1, 1, 1]], "vector": ["(1,2)"]},
        {"kind": "decomposition", "genus": 3, "order": 8, "signature": "[0;2,2,4,4]",
         "group": "(8,2)", "factors": [[1, 1, 1]], "vector": ["(1,2)"]},
    ]
    store.append(recs[:1])
    store.append(recs[1:])
    store.append([])
    assert [r["genus"] for r in store.records()] == [5, 3]
    assert [r["genus"] for r in store.consolidate()] == [3, 5]
    lines = (tmp_path / "log.jsonl").read_text().splitlines()
    assert [json.loads(ln)["genus"] for ln in lines] == [3, 5]


def _small_dir(tmp_path):
    return copy_groups(tmp_path / "groups", ["g6_1", "g8_2", "g8_3", "g12_4", "g24_12"])


def test_search_is_deterministic_across_workers(tmp_path):
    d = _small_dir(tmp_path)
    base = dict(group_paths=group_paths_in(d), genus_min=2, genus_max=4, max_subgroup_order=4)
    one = run_search(SearchJob(**base, jobs=1), ResultStore(tmp_path / "a.jsonl"))
    two = run_search(SearchJob(**base, jobs=2), ResultStore(tmp_path / "b.jsonl"))
    assert not one.failures and not two.failures
    assert one.records == two.records
    assert (tmp_path / "a.jsonl").read_text() == (tmp_path / "b.jsonl").read_text()
    assert emit_table(one.records) == emit_table(two.records)
    assert one.records == sorted(one.records, key=sort_key)
    kinds = {r["kind"] for r in one.records}
    assert kinds == {"decomposition", "quotient"}


def test_search_isolates_bad_groups(tmp_path):
    d = _small_dir(tmp_path)
    (d / "broken.pg").write_text("degree 3\nid bad\n(1,2\n")
    res = run_search(SearchJob(group_paths_in(d), 3, 3))
    assert len(res.failures) == 1 and "broken.pg" in res.failures[0]
    assert res.records


def test_search_filters(tmp_path):
    d = _small_dir(tmp_path)
    paths = group_paths_in(d)
    everything = run_search(SearchJob(paths, 3, 3)).records
    complete = run_search(SearchJob(paths, 3, 3, only_complete=True)).records
    assert complete and all(r["completely_decomposable"] for r in complete)
    assert len(complete) <= len(everything)
    pinned = run_search(SearchJob(paths, 3, 3, signatures=(Signature.parse("0;2,2,4,4"),))).records
    assert {r["signature"] for r in pinned} == {"[0;2,2,4,4]"}
    assert all(r["genus"] == 3 for r in everything)
    full = run_search(SearchJob(paths, 3, 3, dedup=False)).records
    assert len(full) >= len(everything)


def test_search_job_validation():
    with pytest.raises(ValueError):
        SearchJob((), 5, 3)
    with pytest.raises(ValueError):
        SearchJob((), 3, 5, jobs=0)


def test_emit_formats():
    recs = run_search(SearchJob((GROUPS / "g8_2.pg",), 3, 3, max_subgroup_order=2)).records
    text = emit_table(recs, "text")
    assert text.startswith("# genus")
    assert "3  (8,2)  [0;2,2,4,4]  1, 1, 1  1  -" in text
    csv_text = emit_table(recs, "csv")
    assert csv_text.splitlines()[0].startswith("kind,genus,group")
    assert len(csv_text.splitlines()) == len(recs) + 1
    assert len(json.loads(emit_table(recs, "json"))) == len(recs)
    with pytest.raises(ValueError):
        emit_table(recs, "xml")


def test_store_is_plain_json(tmp_path):
    run_search(SearchJob((GROUPS / "g6_1.pg",), 2, 4), ResultStore(tmp_path / "r.jsonl"))
    for line in (tmp_path / "r.jsonl").read_text().splitlines():
        rec = json.loads(line)
        assert {"kind", "group", "signature", "genus", "multiplicities"} <= set(rec)
    assert os.path.getsize(tmp_path / "r.jsonl") > 0
