"""Acceptance criteria, one test each.

Every test prints a single ``[PASS]``/``[FAIL]`` line with its timing.
Run ``pytest tests/test_acceptance.py -v -s`` to see only these lines, or
``python3 -m tests.test_acceptance`` to run them without pytest.
"""

import io
import json
import math
import random
import time
from contextlib import redirect_stdout

import pytest

from ybcubes.census import census_presentation, enumerate_labeled, iter_labeled, mass_formula_eval
from ybcubes.cli import main
from ybcubes.complex import build_complex, check_cube_condition, check_vh
from ybcubes.field import FieldSpec, build_field
from ybcubes.fixtures import GAMMA1_RELATORS, GAMMA2_RELATORS, fixture
from ybcubes.homology import AbelianGroup, first_homology
from ybcubes.presentation import Presentation, build_gamma, canonical_square, extend_with_commuting_factor, parse_word
from ybcubes.ybmap import derive_R, iso_test, relabel, to_matrix, verify_qybe, verify_ybe, verify_ybe_tricolored


def _cli_json(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(list(argv))
    return code, json.loads(buf.getvalue())


def _canonical_words(pres: Presentation, words) -> set[str]:
    lookup = {n: k for k, n in enumerate(pres.names)}
    return {pres.word_name(canonical_square(parse_word(w, lookup), pres.inv, pres.colors)) for w in words}


def _gamma1_names():
    return sorted(f"{l}{i}" for l, r in zip("abc", (1, 2, 3)) for i in range(r, 24, 4))


def crit_1():
    code, doc = _cli_json("build", "--fixture", "gamma1")
    pres = Presentation.from_json(doc["presentation"])
    pairs = {frozenset(p) for p in doc["presentation"]["involution_pairs"]}
    want_pairs = {frozenset((n, n[0] + str((int(n[1:]) + 12) % 24))) for n in _gamma1_names()}
    ok1 = (
        code == 0
        and sorted(pres.names) == _gamma1_names()
        and pairs == want_pairs and len(pairs) == 9
        and set(doc["presentation"]["square_names"]) == _canonical_words(pres, GAMMA1_RELATORS)
        and len(pres.squares) == 27
    )
    code2, doc2 = _cli_json("build", "--fixture", "gamma2")
    pres2 = Presentation.from_json(doc2["presentation"])
    ok2 = (
        code2 == 0
        and len(pres2.names) == 18
        and set(doc2["presentation"]["square_names"]) == _canonical_words(pres2, GAMMA2_RELATORS)
        and len(pres2.squares) == 26
    )
    return ok1 and ok2, "gamma1 18/9/27, gamma2 26 relators"


def crit_2():
    g1 = fixture("gamma1")
    cosets = [r for r in range(4) if r % 4]
    exps = [d for d in range(24) if math.gcd(d, 24) == 1]
    hits = [d for d in exps if build_gamma(build_field(FieldSpec.for_q(5, d)), cosets).same_squares(g1)]
    return bool(hits), f"{len(exps)} primitive exponents searched, matches at d = {hits}"


def crit_3():
    worst = 0.0
    ok = True
    for name in ("gamma1", "gamma2"):
        R = derive_R(build_complex(fixture(name)))
        for check in (verify_ybe, verify_qybe):
            t = time.perf_counter()
            rep = check(R)
            worst = max(worst, time.perf_counter() - t)
            ok &= rep.passed and rep.checked == 18 ** 3
    mutated = derive_R(build_complex(fixture("gamma1").without_square(0)))
    bad = verify_ybe(mutated)
    ok &= not bad.passed and bool(bad.witnesses)
    return ok and worst < 1.0, f"5832 triples each, slowest run {worst:.3f}s; mutation witness: {bad.witnesses[0]}"


def crit_4():
    want = {"gamma1": AbelianGroup(0, (2, 10, 10)), "gamma2": AbelianGroup(0, (2, 2, 4, 4))}
    got = {n: [first_homology(fixture(n), c) for c in ("paired", "split")] for n in want}
    ok = all(g == [want[n], want[n]] for n, g in got.items())
    return ok, ", ".join(f"{n}: {got[n][0]}" for n in want)


def crit_5():
    ok = True
    for name in ("gamma1", "gamma2"):
        R = derive_R(build_complex(fixture(name)))
        M = to_matrix(R)
        dense = M.to_dense()
        ok &= dense.shape == (324, 324)
        ok &= bool((dense.sum(axis=0) == 1).all() and (dense.sum(axis=1) == 1).all())
        ok &= M.matrix_market() == to_matrix(derive_R(build_complex(fixture(name)))).matrix_market()
        ok &= M.csv() == to_matrix(R).csv()
    return ok, "324x324, one unit per row/column, MatrixMarket and CSV byte-identical"


def crit_6():
    R1 = derive_R(build_complex(fixture("gamma1")))
    R2 = derive_R(build_complex(fixture("gamma2")))
    res = iso_test(R1, R2)
    nu0 = list(range(18))
    random.Random(2024).shuffle(nu0)
    R1b = relabel(R1, nu0)
    iso = iso_test(R1, R1b)
    ok = res.verdict == "non-isomorphic" and "H1_cube_group" in res.distinguished_by
    nu = iso.nu or []
    ok &= iso.verdict == "isomorphic" and sorted(nu) == list(range(18))
    ok &= ok and all(R1b(nu[x], nu[y]) == tuple(nu[t] for t in R1(x, y)) for x in range(18) for y in range(18))
    return ok, f"R1 vs R2: {res.verdict} by {res.distinguished_by}; relabeled: {iso.verdict} ({iso.nodes} nodes)"


CENSUS_CASES = [(m, l) for m in range(1, 5) for l in range(1, 5) if m * l <= 4] + [(1, 5), (5, 1)]


def crit_7():
    ok = True
    rows = []
    for m, l in CENSUS_CASES:
        n = enumerate_labeled(m, l)
        f = mass_formula_eval(m, l).count_labeled
        bad = sum(not check_vh(build_complex(census_presentation(m, l, sq))).passed for sq in iter_labeled(m, l))
        ok &= n == f and bad == 0
        rows.append(f"({m},{l})={n}")
    return ok, " ".join(rows)


def crit_8():
    ok = True
    for name in ("gamma1", "gamma2"):
        cx = build_complex(fixture(name))
        cube = check_cube_condition(cx)
        tri = verify_ybe_tricolored(derive_R(cx))
        ok &= cube.passed == tri.passed
        ok &= cube.passed
    # a mutated complex must fail both
    g = fixture("gamma1")
    other = build_gamma(build_field(FieldSpec.for_q(5, 1)), [1, 2, 3])
    lookup = g.lookup()
    mixed = [sq for sq in g.squares if {g.colors[e] for e in sq} != {0, 2}]
    mixed += [[lookup[other.names[e]] for e in sq] for sq in other.squares
              if {other.colors[e] for e in sq} == {0, 2}]
    mcx = build_complex(g.with_squares(mixed))
    mcube, mtri = check_cube_condition(mcx), verify_ybe_tricolored(derive_R(mcx))
    ok &= check_vh(mcx).passed and not mcube.passed and not mtri.passed
    return ok, "gamma1, gamma2 agree (both pass); mixed-block mutation agrees (both fail)"


def crit_9():
    rng = random.Random(9)
    pool = [(m, l, sq) for m, l in ((2, 2), (1, 2), (2, 1), (1, 3)) for sq in iter_labeled(m, l)]
    ok = True
    for m, l, sq in rng.sample(pool, 20):
        base = build_complex(census_presentation(m, l, sq))
        ok &= check_vh(base).passed
        cx = build_complex(extend_with_commuting_factor(base.pres, rng.choice((1, 2))))
        ok &= check_vh(cx).passed and check_cube_condition(cx).passed
    return ok, "20 sampled census complexes extended; VH and cube condition hold"


CRITERIA = [
    (1, "fixture fidelity", crit_1, 1.0),
    (2, "construction match", crit_2, 10.0),
    (3, "YBE/QYBE and mutation", crit_3, 2 * 4 * 1.0),
    (4, "first homology", crit_4, 1.0),
    (5, "matrix export", crit_5, None),
    (6, "distinguishing solutions", crit_6, 60.0),
    (7, "census mutual oracle", crit_7, 300.0),
    (8, "cube-condition equivalence", crit_8, 1.0),
    (9, "extension soundness", crit_9, 30.0),
]


def run_criterion(num, title, fn, limit):
    t = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t
    ok = bool(ok) and (limit is None or dt < limit)
    bound = f" < {limit:g}s" if limit is not None else ""
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num} {title}: {dt:.2f}s{bound}; {detail}"
    return ok, line


@pytest.mark.parametrize("num,title,fn,limit", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, title, fn, limit, capsys):
    ok, line = run_criterion(num, title, fn, limit)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    raise SystemExit(0 if all(ok for ok, _ in results) else 1)
