from __future__ import annotations

from fractions import Fraction

import pytest

from cyclochar import lab
from cyclochar.linalg import row_equivalent, solve_linear_system
from cyclochar.tasks import express_in_r_s


def test_bundle_flags():
    b = lab.CocycleBundle("x", 1, None)
    b.record("ok", True)
    assert b.verified
    b.record("bad", False)
    assert not b.verified and b.failures == {"bad": "identity does not hold"}
    with pytest.raises(lab.VerificationError):
        b.set_flag("worse", False, "w")


def test_codim1_cocycle():
    bundle = lab.codim1_cocycle()
    assert bundle.verified
    assert set(bundle.flags) == {"equivariant", "b-closed", "cyclic"}


def test_reference_systems_give_the_beta_family():
    joint = lab.reference_hochschild_system()
    cyc = lab.reference_cyclic_system()
    joint.rows += cyc.rows
    joint.rhs += cyc.rhs
    sol = solve_linear_system(joint)
    values = express_in_r_s(sol, list(lab.BETAS), "r", "beta3")
    for name, value in lab.expected_beta(1, 0).items():
        assert values[name][0] == value
    for name, value in lab.expected_beta(0, 1).items():
        assert values[name][1] == value


def test_codim2_solve():
    solve = lab.codim2_solve()
    assert solve.equivariant and solve.b_on_v2_vanishes
    assert solve.alpha_ok and solve.hochschild_ok and solve.cyclic_ok
    assert solve.beta_ok and solve.gamma_ok
    assert solve.ok
    # the extracted cyclic system alone has rank 7, the reference system rank 8
    assert not solve.cyclic_strict
    assert not row_equivalent(solve.cyclic_system.matrix(), lab.reference_cyclic_system().matrix())


def test_gamma_values():
    solve = lab.codim2_solve()
    values = express_in_r_s(solve.gamma_solution, list(lab.GAMMAS), "r", "s")
    assert values == {"gamma1": (1, 0), "gamma2": (1, 0), "gamma3": (0, 1), "gamma4": (0, 1)}


def test_beta9_uses_the_reduced_coproduct():
    setup = lab.codim2_setup()
    h = setup.hopf
    d = lab.delta_symbol(h, 1, 1, 2)
    red = lab.reduced_coproduct(h, d)
    assert all(a and b for a, b in red)
    with pytest.raises(ValueError):
        lab.reduced_coproduct(h, {(): 1})


def test_codim2_cocycle():
    result = lab.codim2_cocycle()
    assert result.phi.verified
    assert result.primitive.verified
    # b(primitive) is the s-part with the opposite sign
    assert result.primitive_sign == -1
    model = lab.codim2_setup().model
    assert model.twisted_b(result.primitive.value) == result.s_part.scale(-1)
    assert model.twisted_b(result.s_part).is_zero()


def test_solved_coefficients():
    c = lab.solved_coefficients(2, 3)
    assert c["alpha1"] == c["alpha2"] == 2
    assert c["beta9"] == Fraction(1) + 3
    assert c["gamma4"] == 3


def test_hck_generators_n1():
    bundles = lab.hcK_generators(1)
    assert [b.name for b in bundles] == ["R", "1(x)Y+1/2R(x)Y^2"]
    assert all(b.verified for b in bundles)


def test_hck_generators_n2():
    by_name = {b.name: b for b in lab.hcK_generators(2)}
    for name in ("TF", "GV", "R2", "R3", "R4"):
        assert by_name[name].verified, by_name[name].failures
    assert set(by_name["TF"].flags) == {"b-closed mod filtration", "cyclic mod filtration", "mu = D_P"}
    r1 = by_name["R1"]
    assert r1.flags == {"b-closed": True, "mu = D_P": True}
    assert set(r1.failures) == {"cyclic"}


def test_transverse_fundamental_n1():
    tf = lab.transverse_fundamental(1)
    assert tf == lab.reference_tf1()
    assert lab.transverse_fundamental_bundle(1).verified


def test_characteristic_classes_n1():
    bundles = lab.characteristic_classes(1)
    assert all(b.verified for b in bundles)


def test_characteristic_classes_n2():
    by_name = {b.name: b for b in lab.characteristic_classes(2)}
    for name in ("chi-GV", "chi-R2", "chi-R3", "chi-R4"):
        assert by_name[name].verified, by_name[name].failures
    for name, ref in (("R2", lab.reference_chi_r2()), ("R3", lab.reference_chi_r3()), ("R4", lab.reference_chi_r4())):
        assert lab.characteristic_images(2)[name] == ref
    assert len(lab.reference_chi_r4().value) == 4
    assert set(by_name["chi-R1"].failures) == {"cyclic"}
    assert by_name["chi-R1"].flags == {"b-closed": True}
