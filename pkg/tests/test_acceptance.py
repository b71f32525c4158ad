"""Acceptance suite: one test per criterion, printed as a pass/fail line.

Run with `pytest tests/test_acceptance.py -s` to see the lines as they
complete.  All comparisons are exact rational equalities unless a stated
tolerance appears explicitly.
"""

import hashlib
import json
import random
import time
from contextlib import contextmanager
from fractions import Fraction

from helpers import (
    random_extension,
    random_hypergraph,
    random_probability,
    random_sandwich_instance,
)
from hyperdens import (
    ConstantFamily,
    Hypergraph,
    InfiniteMatching,
    InfiniteStar,
    add_edge_sandwich,
    branching_profile,
    density,
    detect_heavy_sets,
    enclosure,
    eval_to_tolerance,
    exhaustive_profile,
    matching_bound,
    maximum_matching,
    triangle_gadget,
)
from hyperdens.cli import main

HALF = Fraction(1, 2)
TOL9 = Fraction(1, 10**9)
TOL6 = Fraction(1, 10**6)

K3_TEXT = "vertices: a b c\nedge: a b\nedge: a c\nedge: b c\n"
STAR_FAMILY = "family: infinite_star\n"
M2_FAMILY = "family: infinite_k_matching\nparam: k 2\n"
M3_FAMILY = "family: infinite_k_matching\nparam: k 3\n"
CONST_FAMILY = (
    "family: constant\n"
    "begin hypergraph\n"
    "vertices: a b c\n"
    "edge: a b\nedge: a c\nedge: b c\n"
    "end hypergraph\n"
)


@contextmanager
def criterion(number: int, name: str):
    try:
        yield
    except BaseException:
        print(f"\nACCEPTANCE {number} ({name}): FAIL")
        raise
    print(f"\nACCEPTANCE {number} ({name}): PASS")


def run_json(capsys, argv):
    code = main(argv + ["--json"])
    out = capsys.readouterr().out
    assert code == 0, f"exit {code} for {argv}"
    return json.loads(out)


def test_criterion_1_triangle_density(capsys, tmp_path):
    with criterion(1, "triangle density at p = 1/2 is exactly 1/2"):
        path = tmp_path / "k3.hg"
        path.write_text(K3_TEXT)
        report = run_json(capsys, ["density", str(path), "--p", "1/2"])
        assert report["density"] == "1/2"
        assert report["independent_sets"] == "4"
        assert report["subsets"] == "8"
        k3 = Hypergraph("abc", [{"a", "b"}, {"a", "c"}, {"b", "c"}])
        assert density(k3, HALF) == HALF
        elapsed = min(_timed(lambda: density(k3, HALF)) for _ in range(5))
        assert elapsed < 0.001, f"density took {elapsed * 1000:.3f} ms"


def _timed(fn):
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


def test_criterion_2_infinite_star_closed_form():
    with criterion(2, "infinite star encloses 1 - p to width 1e-9"):
        for p in (Fraction(1, 3), HALF, Fraction(2, 3)):
            start = time.perf_counter()
            enc = eval_to_tolerance(InfiniteStar(), p, TOL9)
            elapsed = time.perf_counter() - start
            assert enc.converged
            assert enc.width <= TOL9
            assert enc.lower <= 1 - p <= enc.upper
            assert elapsed <= 5.0, f"p={p} took {elapsed:.2f}s"


def test_criterion_3_infinite_matching_density_zero():
    with criterion(3, "infinite k-matching: exact upper (1-p^k)^n, lower 0"):
        for k in (2, 3):
            fam = InfiniteMatching(k)
            for n in (1, 2, 4, 8):
                step = enclosure(fam, HALF, n)
                assert step.upper == (1 - HALF**k) ** n
                assert step.lower == 0
            enc = eval_to_tolerance(fam, HALF, TOL6)
            assert enc.converged
            assert enc.lower == 0
            assert enc.upper == (1 - HALF**k) ** enc.horizon
            assert enc.upper < TOL6


def test_criterion_4_oracle_equivalence():
    with criterion(4, "branch-and-reduce equals exhaustive on 500 randoms"):
        rng = random.Random(20240811)
        start = time.perf_counter()
        for _ in range(500):
            h = random_hypergraph(rng, max_vertices=12, max_rank=4)
            assert branching_profile(h) == exhaustive_profile(h)
        elapsed = time.perf_counter() - start
        assert elapsed <= 60.0, f"took {elapsed:.1f}s"


def test_criterion_5_quantitative_bounds():
    with criterion(5, "edge monotonicity, matching bound, sandwich, antichain, product"):
        rng = random.Random(5150)
        # adding edges (and vertices) never raises the density
        for _ in range(200):
            h = random_hypergraph(rng, max_vertices=8, max_rank=3)
            g = random_extension(rng, h)
            for _ in range(10):
                p = random_probability(rng)
                assert density(g, p) <= density(h, p)
        # certified matchings give the (1 - p^k)^m upper bound
        for _ in range(200):
            h = random_hypergraph(rng, max_vertices=10, max_rank=4, max_edges=14)
            p = random_probability(rng)
            witness = maximum_matching(h)
            assert density(h, p) <= matching_bound(h, p, witness)
        # the add-edge sandwich is strict on the left, weak on the right
        for _ in range(200):
            h, x, witnesses = random_sandwich_instance(rng)
            p = random_probability(rng)
            lo, hi = add_edge_sandwich(h, x, witnesses, p)
            exact = density(h, p)
            assert lo < exact <= hi
        # antichain reduction preserves the whole profile
        for _ in range(200):
            h = random_hypergraph(rng, max_vertices=10, max_rank=4)
            assert branching_profile(h) == branching_profile(h.antichain_reduction())
        # densities multiply over vertex-disjoint unions
        for _ in range(200):
            g = random_hypergraph(rng, max_vertices=6, max_rank=3)
            h = random_hypergraph(rng, max_vertices=6, max_rank=3)
            labels = [f"g.{v}" for v in g.vertices] + [f"h.{v}" for v in h.vertices]
            edges = [{f"g.{v}" for v in e} for e in g.edges]
            edges += [{f"h.{v}" for v in e} for e in h.edges]
            union = Hypergraph(labels, edges)
            p = random_probability(rng)
            assert density(union, p) == density(g, p) * density(h, p)


def test_criterion_6_finitization_end_to_end(capsys, tmp_path):
    with criterion(6, "finitize: star core {{c}}, matching zero, constant core H0"):
        star = tmp_path / "star.fam"
        star.write_text(STAR_FAMILY)
        for p in ("1/3", "1/2"):
            report = run_json(
                capsys,
                ["finitize", str(star), "--p", p, "--tol", "1/1000000000"],
            )
            assert report["verified"] is True
            assert report["heavy_sets"] == [{"set": ["c"], "evidence": [3, 7]}]
            core_lines = [
                line for line in report["core"].splitlines() if line.startswith("edge:")
            ]
            assert core_lines == ["edge: c"]
            assert Fraction(report["core_density"]) == 1 - Fraction(p)

        m2 = tmp_path / "m2.fam"
        m2.write_text(M2_FAMILY)
        report = run_json(
            capsys, ["finitize", str(m2), "--p", "1/2", "--tol", "1/1000000"]
        )
        assert report["density_zero"] is True
        assert "density-zero" in report["flags"]
        assert report["core_density"] == "0" and report["verified"] is True

        const = tmp_path / "const.fam"
        const.write_text(CONST_FAMILY)
        report = run_json(capsys, ["finitize", str(const), "--p", "1/2"])
        assert report["verified"] is True
        assert report["heavy_sets"] == []
        assert sorted(
            line for line in report["core"].splitlines() if line.startswith("edge:")
        ) == ["edge: a b", "edge: a c", "edge: b c"]


def test_criterion_7_gadget_preservation():
    with criterion(7, "triangle gadget preserves id at 1/2 on 200 randoms"):
        rng = random.Random(314159)
        for _ in range(200):
            h = random_hypergraph(rng, max_vertices=10, max_rank=2)
            out = triangle_gadget(h)
            assert all(len(e) == 2 for e in out.edges)
            assert density(out, HALF) == density(h, HALF)


def _structured_outputs(capsys, tmp_path, workers, monkeypatch):
    monkeypatch.setenv("HYPERDENS_WORKERS", workers)
    files = {
        "k3.hg": K3_TEXT,
        "dot.hg": "vertices: x a b\nedge: x\nedge: a b\n",
        "nested.hg": "vertices: a b\nedge: a\nedge: a b\n",
        "star.fam": STAR_FAMILY,
        "m2.fam": M2_FAMILY,
        "m3.fam": M3_FAMILY,
        "const.fam": CONST_FAMILY,
    }
    for name, text in files.items():
        (tmp_path / name).write_text(text)

    def path(name):
        return str(tmp_path / name)

    commands = [
        ["density", path("k3.hg"), "--p", "1/2", "--profile"],
        ["density", path("k3.hg"), "--p", "2/3"],
        ["bounds", path("k3.hg"), "--p", "1/2"],
        ["family", path("star.fam"), "--p", "1/2", "--tol", "1/1000000000"],
        ["family", path("star.fam"), "--p", "1/3", "--tol", "1/1000000000"],
        ["family", path("m2.fam"), "--p", "1/2", "--tol", "1/1000000"],
        ["family", path("m3.fam"), "--p", "1/2", "--tol", "1/1000000"],
        ["finitize", path("star.fam"), "--p", "1/2", "--tol", "1/1000000000"],
        ["finitize", path("m2.fam"), "--p", "1/2", "--tol", "1/1000000"],
        ["finitize", path("const.fam"), "--p", "1/2"],
        ["gadget", path("dot.hg")],
        ["reduce", path("nested.hg")],
    ]
    chunks = []
    for argv in commands:
        code = main(argv + ["--json"])
        out = capsys.readouterr().out
        assert code == 0
        chunks.append(out)
    # library-level digests: randomized suites and detection reports
    rng = random.Random(777)
    digest = hashlib.sha256()
    for _ in range(50):
        h = random_hypergraph(rng, max_vertices=10, max_rank=3)
        digest.update(repr(branching_profile(h).counts).encode())
    digest.update(detect_heavy_sets(InfiniteStar()).to_text().encode())
    digest.update(detect_heavy_sets(InfiniteMatching(2)).to_text().encode())
    digest.update(repr(eval_to_tolerance(ConstantFamily(
        Hypergraph("abc", [{"a", "b"}, {"a", "c"}, {"b", "c"}])
    ), HALF, TOL9)).encode())
    chunks.append(digest.hexdigest())
    return "".join(chunks)


def test_criterion_8_determinism_across_worker_counts(capsys, tmp_path, monkeypatch):
    with criterion(8, "byte-identical reports across worker counts"):
        first = _structured_outputs(capsys, tmp_path, "1", monkeypatch)
        second = _structured_outputs(capsys, tmp_path, "4", monkeypatch)
        third = _structured_outputs(capsys, tmp_path, "1", monkeypatch)
        assert first == second == third
