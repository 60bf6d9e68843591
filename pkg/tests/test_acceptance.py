"""Acceptance gate: every criterion at its stated bound, exact equality.

Run with -s to see one PASS/FAIL line per criterion.
"""

import pytest

from motsteen import acceptance


def _check(name, fn):
    ok, detail = fn()
    print("ACCEPT %-34s %s  (%s)" % (name, "PASS" if ok else "FAIL", detail))
    assert ok, "%s: %s" % (name, detail)


def test_criterion_01_dual_relation():
    _check("1 dual relation", acceptance.criterion_1_dual_relation)


def test_criterion_02_coproduct_goldens():
    _check("2 coproduct goldens", acceptance.criterion_2_coproduct_goldens)


def test_criterion_03_bialgebra_coassociativity():
    _check("3 bialgebra/coassociativity", acceptance.criterion_3_bialgebra)


def test_criterion_04_pairing_triangularity():
    _check("4 pairing triangularity", acceptance.criterion_4_triangularity)


def test_criterion_05_commutators():
    _check("5 commutator identities", acceptance.criterion_5_commutators)


def test_criterion_06_exterior_relations():
    _check("6 exterior Q relations", acceptance.criterion_6_exterior)


def test_criterion_07_adem_goldens():
    _check("7 Adem goldens", acceptance.criterion_7_adem_goldens)


def test_criterion_08_classical_degeneration():
    _check("8 classical degeneration", acceptance.criterion_8_classical_degeneration)


def test_criterion_09_action_composition():
    _check("9 action composition", acceptance.criterion_9_composition)


def test_criterion_10_module_goldens():
    _check("10 module goldens", acceptance.criterion_10_module_goldens)


def test_criterion_11_characteristic_classes():
    _check("11 characteristic classes", acceptance.criterion_11_characteristic_classes)


def test_criterion_12_adem_report():
    _check("12 Adem discrepancy report", acceptance.criterion_12_adem_report)
