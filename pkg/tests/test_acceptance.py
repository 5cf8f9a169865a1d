"""Acceptance criteria, one test each, run at full size.

Every test prints a ``criterion N: PASS|FAIL`` line into the terminal summary
together with the case count and wall-clock time (budgets are reported, not
asserted, since they depend on the host).
"""

import json
from pathlib import Path

from qaffine.braiding import elliptic_descent_report
from qaffine.checks import run_suite

FIXTURES = Path(__file__).parent / "fixtures"


def _check(acceptance_line, number, title, suite, budget=None, **params):
    res = run_suite(suite, **params)
    status = "PASS" if res.passed else "FAIL"
    extra = f", budget {budget} s" if budget else ""
    acceptance_line(f"criterion {number}: {status}  {title}  "
                    f"[{res.cases} cases, {res.seconds:.1f} s{extra}] {res.details or ''}".rstrip())
    assert res.passed, res.failures
    return res


def test_criterion_01_presentation(acceptance_line):
    _check(acceptance_line, 1, "relations hold on modules, pairs and triples", "relations",
           budget=120, nmax=4, lmax=6, triple_nmax=2, triple_lmax=2)


def test_criterion_02_irreducibility_iff_generic(acceptance_line):
    _check(acceptance_line, 2, "tensor square simple iff strings generic", "genericity",
           budget=300, nmax=3, lmax=6)


def test_criterion_03_pole_locus(acceptance_line):
    _check(acceptance_line, 3, "braiding singularities are even q-powers", "pole-locus",
           budget=600, nmax=3, lmax=4, kmax=10)


def test_criterion_04_composition_factors(acceptance_line):
    _check(acceptance_line, 4, "composition factors are certified standard modules",
           "composition-factors", budget=900, nmax=2, lmax=4, max_factors=3)


def test_criterion_05_braid_axioms(acceptance_line):
    _check(acceptance_line, 5, "unitarity, Yang-Baxter, group law, subsequences, composition",
           "braid-axioms", budget=600, nmax=3, lmax=2, triple_ls=(0, 2))


def test_criterion_06_functoriality(acceptance_line):
    _check(acceptance_line, 6, "braidings preserve submodules and induce isomorphisms",
           "functoriality", nmax=2, lmax=4, max_factors=3)


def test_criterion_07_duality(acceptance_line):
    res = _check(acceptance_line, 7, "dual shifts the evaluation exponent by 2", "duality",
                 nmax=3, mmax=4)
    assert res.details["configured_side"] in res.details["uniform_sides"]


def test_criterion_08_characters(acceptance_line):
    _check(acceptance_line, 8, "q-character axioms and even indices", "characters",
           budget=300, nmax=4, lmax=6, pair_nmax=2, pair_lmax=4, recursion_nmax=4)


def test_criterion_09_k0_injective(acceptance_line):
    _check(acceptance_line, 9, "distinct simples have distinct classes, classes multiply",
           "k0-injectivity", nmax=2, lmax=4, max_factors=3)


def test_criterion_10_operad(acceptance_line):
    _check(acceptance_line, 10, "gluing and composition laws, equivariance", "operad-laws",
           budget=60, max_inputs=5, max_vertices=4)


def test_criterion_11_descent(acceptance_line):
    res = _check(acceptance_line, 11, "descent report at exponents 4 and 6", "descent",
                 pair=(1, 0, 1, 0), k=4)
    report = elliptic_descent_report(1, 0, 1, 0, 4)
    frozen = json.loads((FIXTURES / "descent_1_0_1_0_k4.json").read_text())
    assert json.loads(json.dumps(report, sort_keys=True)) == frozen
    assert res.details["verdict"] == frozen["verdict"]
