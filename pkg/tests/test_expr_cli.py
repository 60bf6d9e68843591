import json
import os
import subprocess
import sys

import pytest

from motsteen.base import BaseScalar
from motsteen.expr import (
    ParseError,
    parse_dual,
    parse_element,
    parse_module,
    parse_scalar,
    parse_word_terms,
)
from motsteen.module_action import ModuleElement, module_multiply
from motsteen.steenrod import ADMISSIBLE, MILNOR, convert_basis, make_named, multiply


def test_parse_scalar():
    assert parse_scalar("1", 2) == BaseScalar.one(2)
    assert parse_scalar("rho^2 tau", 2) == BaseScalar.monomial(2, 2, 1)
    assert parse_scalar("rho + tau", 2) == BaseScalar.rho(2) + BaseScalar.tau(2)
    assert parse_scalar("2", 3) == BaseScalar.from_int(3, 2)


def test_parse_element_terms():
    got = parse_element("Sq3 Sq1 + rho Sq2", 2)
    want = multiply(make_named(2, "Sq", 3), make_named(2, "Sq", 1)) + make_named(
        2, "Sq", 2
    ).scale(BaseScalar.rho(2))
    assert got == want


def test_parse_milnor_brackets():
    got = parse_element("M[0,1;2]", 2)
    from motsteen.dual import make_monomial
    from motsteen.steenrod import SteenrodElement

    assert got == SteenrodElement(
        2, MILNOR, {make_monomial((0, 1), (2,)): BaseScalar.one(2)}
    )
    assert parse_element("M[;]", 2) == SteenrodElement.one(2)


def test_parse_named():
    assert parse_element("b", 3) == make_named(3, "b")
    assert parse_element("Q1", 2) == make_named(2, "Q", 1)
    assert parse_element("q2", 2) == make_named(2, "q", 2)
    assert parse_element("B1", 2) == make_named(2, "B", 1)
    assert parse_element("P2", 3) == make_named(3, "P", 2)


def test_parse_minus_odd():
    got = parse_element("P1 P1 - P2", 3)
    want = multiply(make_named(3, "P", 1), make_named(3, "P", 1)) - make_named(3, "P", 2)
    assert got == want


def test_parse_errors_carry_offsets():
    with pytest.raises(ParseError) as sq_err:
        parse_element("Sq3 +", 2)
    assert sq_err.value.pos == 5
    with pytest.raises(ParseError):
        parse_element("Sq3 @", 2)
    with pytest.raises(ParseError):
        parse_element("frob2", 2)
    with pytest.raises(ParseError):
        parse_element("Sq2", 3)


def test_parse_module():
    w = parse_module("u1 v1^3 u2", 2, 2, 16)
    want = module_multiply(
        module_multiply(
            ModuleElement.gen_u(2, 2, 16, 1), ModuleElement.gen_v(2, 2, 16, 1, 3)
        ),
        ModuleElement.gen_u(2, 2, 16, 2),
    )
    assert w == want
    with pytest.raises(ParseError):
        parse_module("u5", 2, 2, 16)


def test_parse_dual():
    from motsteen.dual import DualElement, dual_multiply, make_monomial

    got = parse_dual("t0 x1^2 + rho t1", 2)
    want = DualElement(
        2,
        {
            make_monomial((1,), (2,)): BaseScalar.one(2),
            make_monomial((0, 1), ()): BaseScalar.rho(2),
        },
    )
    assert got == want
    # squares reduce through the relation
    assert parse_dual("t0^2", 2) == dual_multiply(
        DualElement.generator_tau(2, 0), DualElement.generator_tau(2, 0)
    )


def test_print_parse_roundtrip():
    import random

    from motsteen.dual import enumerate_monomials
    from motsteen.base import Bidegree
    from motsteen.steenrod import SteenrodElement

    rng = random.Random(13)
    pool = []
    for p in range(11):
        for q in range(p + 1):
            pool.extend(enumerate_monomials(Bidegree(p, q), 2))
    for _ in range(20):
        terms = {}
        for m in rng.sample(pool, 3):
            terms[m] = BaseScalar.monomial(2, rng.randint(0, 2), rng.randint(0, 2))
        x = SteenrodElement(2, MILNOR, terms)
        assert parse_element(str(x), 2) == x
        adm = convert_basis(x, ADMISSIBLE)
        assert convert_basis(parse_element(str(adm), 2), ADMISSIBLE) == adm


def test_word_terms():
    terms = parse_word_terms("Sq3 Sq1 + rho Sq2", 2)
    assert terms[0][1] == (("b",), ("P", 1), ("b",))
    assert terms[1][1] == (("P", 1),)
    assert terms[1][0] == BaseScalar.rho(2)


def _run(*args):
    env = dict(os.environ)
    return subprocess.run(
        [sys.executable, "-m", "motsteen.cli", *args],
        capture_output=True,
        text=True,
        env=env,
    )


def test_cli_multiply_commutator():
    r = _run("multiply", "--commutator", "Sq4", "Q1", "--basis", "milnor")
    assert r.returncode == 0
    assert r.stdout.strip() == "rho M[1,1;1] + M[0,0,1;]"


def test_cli_adem_odd():
    r = _run("adem", "--prime", "3", "--a", "1", "--b", "1")
    assert r.returncode == 0
    assert r.stdout.strip() == "2 P2"


def test_cli_convert():
    r = _run("convert", "--to", "admissible", "Q1")
    assert r.returncode == 0
    assert r.stdout.strip() == "Sq2 Sq1 + Sq3"


def test_cli_act():
    r = _run("act", "--n", "1", "--cap", "16", "Q1", "u1")
    assert r.returncode == 0
    assert r.stdout.strip() == "v1^2"


def test_cli_charclass():
    r = _run("charclass", "--R", "1", "--rank", "2", "--prime", "2", "--chern")
    assert r.returncode == 0
    assert r.stdout.strip() == "e1"


def test_cli_parse_error_exit():
    r = _run("multiply", "Sq3 +", "Sq1")
    assert r.returncode == 2
    assert "offset" in r.stderr


def test_cli_adem_out_of_range():
    r = _run("adem", "--a", "4", "--b", "1")
    assert r.returncode == 1
    assert "admissible" in r.stderr


def test_cli_table_deterministic(tmp_path):
    out1 = tmp_path / "t1.json"
    out2 = tmp_path / "t2.json"
    r1 = _run("table", "--max-degree", "6", "--out", str(out1))
    r2 = _run("table", "--max-degree", "6", "--out", str(out2))
    assert r1.returncode == 0 and r2.returncode == 0
    assert out1.read_bytes() == out2.read_bytes()
    data = json.loads(out1.read_text())
    assert data["prime"] == 2
    assert all({"a", "b", "expansion"} <= set(rec) for rec in data["records"])


def test_cli_cache_env(tmp_path):
    env = dict(os.environ)
    env["MOTSTEEN_CACHE"] = str(tmp_path)
    r = subprocess.run(
        [sys.executable, "-m", "motsteen.cli", "adem", "--a", "1", "--b", "1"],
        capture_output=True,
        text=True,
        env=env,
    )
    assert r.returncode == 0
    assert (tmp_path / "adem_l2.json").exists()


def test_cli_specialize():
    r = _run("multiply", "Sq2", "Sq2", "--specialize", "tau=1,rho=0")
    assert r.returncode == 0
    assert r.stdout.strip() == "Sq3 Sq1"
