import pytest

from nilcohom.algebra import BasisElement, Form
from nilcohom.cohomology import betti
from nilcohom.model import (
    ComplexStructure,
    DifferentialSquareError,
    ModulusError,
    UnboundParameterError,
    check_d_squared,
    check_nilpotency,
    instantiate,
    product_with_torus,
    realify,
)
from nilcohom.parser import parse_binding, parse_complex_structure, parse_gaussian, parse_real_algebra, render


def build(template, binding=""):
    return instantiate(parse_complex_structure(template), parse_binding(binding))


def test_instantiate_iwasawa():
    cs = build("(0, 0, w12)")
    assert cs.d_omega[2] == Form.single(3, BasisElement((1, 2), ()))


def test_instantiate_with_binding():
    cs = build("(0, 0, w1~1 + D*w2~2)", "D=i")
    assert cs.d_omega[2].coefficient(BasisElement((2,), (2,))) == parse_gaussian("i")


def test_instantiate_modulus_value():
    cs = build("(0, w1~1, w12 + B*w1~2 + abs(B-1)*w2~1)", "B=1/2; absBm1=1/2")
    assert cs.d_omega[2].coefficient(BasisElement((2,), (1,))) == parse_gaussian("1/2")


def test_unbound_parameter_reported_by_name():
    with pytest.raises(UnboundParameterError) as err:
        build("(0, 0, w1~1 + D*w2~2)")
    assert err.value.names == ("D",)


def test_modulus_inconsistency_rejected():
    with pytest.raises(ModulusError):
        build("(0, w1~1, w12 + B*w1~2 + abs(B-1)*w2~1)", "B=1/2; absBm1=2")
    with pytest.raises(ModulusError):
        build("(0, w1~1, w12 + B*w1~2 + abs(B-1)*w2~1)", "B=1/2; absBm1=-1/2")


def test_d_squared_pass_for_nontrivial_structure():
    # the differential of w2 involves w3, whose differential is nonzero
    cs = build("(0, w13+w1~3, i*w1~2 - i*w2~1)")
    assert check_d_squared(cs).ok


def test_d_squared_failure_lists_residual():
    template = parse_complex_structure("(0, w1~3, w12)")
    with pytest.raises(DifferentialSquareError) as err:
        instantiate(template, parse_binding(""))
    labels = [label for label, _ in err.value.report.residuals]
    assert "w2" in labels
    residuals = dict(err.value.report.residuals)
    assert not residuals["w2"].is_zero()


def test_check_d_squared_report_on_unvalidated_structure():
    cs = ComplexStructure(3, [
        Form.zero(3),
        Form.single(3, BasisElement((1,), (3,))),
        Form.single(3, BasisElement((1, 2), ())),
    ], validate=False)
    report = check_d_squared(cs)
    assert not report.ok
    assert "FAILED" in str(report)


def test_nilpotency():
    assert check_nilpotency(parse_real_algebra("(0^6)"))
    assert check_nilpotency(parse_real_algebra("(0,0,0,0,13+42,14+23)"))
    assert not check_nilpotency(parse_real_algebra("(0,12,0,0,0,0)"))


def test_realify_torus_is_abelian():
    algebra = realify(build("(0,0,0)"))
    assert algebra.dim == 6 and algebra.is_abelian()


def test_realify_iwasawa_recovers_h5_presentation():
    algebra = realify(build("(0,0,w12)"))
    assert render(algebra) == "(0,0,0,0,13+42,14+23)"
    assert algebra.first_betti() == 4


def test_realify_h8_first_betti():
    assert realify(build("(0,0,w1~1)")).first_betti() == 5


def test_parser_defers_jacobi_to_model_validation():
    # syntactically fine, but d(d e^4) = e^{124} != 0
    algebra = parse_real_algebra("(0,0,12,34)")
    report = algebra.check_d_squared()
    assert not report.ok
    assert [label for label, _ in report.residuals] == ["e4"]


def test_realify_first_betti_matches_catalog(all_cases, structures):
    for case in all_cases:
        assert realify(structures[case.id]).first_betti() == case.golden_betti[0]


def test_product_with_torus_examples(structures):
    torus4 = product_with_torus(build("(0,0,0)"))
    assert torus4.n == 4 and all(f.is_zero() for f in torus4.d_omega)
    assert product_with_torus(structures["12"]) == structures["12_8D"]
    assert product_with_torus(structures["08"]) == structures["08_8D"]


def test_every_8d_case_is_the_torus_product_of_its_6d_counterpart(all_cases, structures):
    for case in all_cases:
        if case.dim != 4:
            continue
        base = case.id[:-3]
        assert product_with_torus(structures[base]) == structures[case.id], case.id


def test_product_with_torus_kuenneth_bettis(tables):
    for cid in ("00", "08", "12"):
        base = tables[cid].betti + [0, 0]
        lifted = tables[cid + "_8D"].betti
        for k in range(len(lifted)):
            expected = base[k] + (2 * base[k - 1] if k >= 1 else 0) + \
                (base[k - 2] if k >= 2 else 0)
            assert lifted[k] == expected
