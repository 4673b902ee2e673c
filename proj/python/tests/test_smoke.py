import hkr
import pytest


@pytest.fixture(scope="module")
def ctx5():
    return hkr.Context(hkr.uqsl2(5))


def test_center_dimension(ctx5):
    assert ctx5.dim_Z == 7
    assert len(ctx5.rays()) == 4


def test_integral_normalization(ctx5):
    lam = ctx5.element("lambda")
    assert str(ctx5.lam(lam)) == "1"
    assert str(ctx5.counit(lam)) == "0"
    assert str(ctx5.lam(ctx5.element("one"))) == "0"


def test_unknot_matches_lambda(ctx5):
    z = ctx5.element("zrt")
    assert ctx5.invariant(hkr.Diagram.unknot(0), z) == ctx5.lam(z)


def test_boundary_product_on_lens_spaces(ctx5):
    one, zrt, p0 = (ctx5.element(n) for n in ("one", "zrt", "p0"))
    for n in range(0, 4):
        D = hkr.Diagram.lens(n)
        lhs = ctx5.boundary_invariant(D, one)
        rhs = ctx5.boundary_invariant(D, zrt) * ctx5.boundary_invariant(D, p0)
        assert lhs == rhs


def test_diagram_round_trip_and_moves():
    D = hkr.Diagram.hopf()
    assert hkr.Diagram.parse(str(D)) == D
    E = D.apply("r2-insert row=2 pos=0 sign=1")
    assert E.linking_matrix() == D.linking_matrix()


def test_bad_diagram_raises():
    with pytest.raises(ValueError):
        hkr.Diagram.parse("cap 0\n")


def test_hom_count():
    assert hkr.hom_count("generators 1\n+1 +1\n", "Z2") == 2


def test_cli_exit_codes():
    code, out, _ = hkr.run(["invariant", "--p", "5", "--z", "zrt", "--build", "unknot 0"])
    assert code == 0 and out.strip() == "3 + 1*v^2 + 1*v^3"
    code, _, err = hkr.run(["invariant", "--p", "5", "--z", "nope", "--build", "hopf"])
    assert code == 1 and "nope" in err
