import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pauliscope import (DomainError, GlobalInvariants, LocalRotation, NoRealRootsError, PauliRep,
                        apply_local, bell_state, chaotic_state, closed_form_invariants,
                        entanglement_dyadic, global_invariants, hw_transform, invariants_of_k,
                        lambda_parameterization, local_invariants, positivity_inequalities,
                        product_state, pure_state, quartic_roots, random_state)
from pauliscope.statecore import to_matrix

from conftest import counterexample_pair


def _random_traceless_hermitian(rng, scale=1.0):
    g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    k = (g + g.conj().T) / 2
    k -= np.trace(k).real / 4 * np.eye(4)
    return scale * k


def test_global_invariants_examples():
    assert global_invariants(bell_state()).as_tuple() == pytest.approx((6, 8, 3), abs=1e-12)
    assert global_invariants(chaotic_state()).as_tuple() == pytest.approx((0, 0, 0), abs=1e-15)
    for x in (0.0, 0.4, 1.0):
        assert global_invariants(pure_state(x)).as_tuple() == pytest.approx((6, 8, 3), abs=1e-12)


def test_bell_traces_oracle():
    # Tr K^2 = 12, Tr K^3 = -24, Tr K^4 = 84 for spectrum {-3, 1, 1, 1}
    k = np.diag([-3.0, 1, 1, 1])
    assert invariants_of_k(k).as_tuple() == pytest.approx((12 / 2, 24 / 3, 84 / 4 - 144 / 8))


def test_local_invariants_examples():
    assert local_invariants(chaotic_state()).as_tuple() == pytest.approx((0,) * 9, abs=0)
    assert local_invariants(bell_state()).as_tuple() == pytest.approx((3, -1, 3, 0, 0, 0, 0, 0, -1), abs=1e-15)
    p1, p2 = counterexample_pair()
    assert np.allclose(local_invariants(p1).as_tuple(), local_invariants(p2).as_tuple(), atol=1e-12, rtol=0)


def test_entanglement_dyadic_examples():
    assert np.allclose(entanglement_dyadic(product_state([0.1, 0.5, -0.2], [0.3, 0.0, 0.9])), 0)
    assert np.allclose(entanglement_dyadic(bell_state()), -np.eye(3))
    assert np.allclose(entanglement_dyadic(pure_state(0.6)), np.diag([-0.64, -0.8, -0.8]))


def test_closed_forms_match_trace_route():
    # the corrected closed forms agree with the trace route on states and non-states
    rng = np.random.default_rng(1)
    for _ in range(200):
        x = rng.uniform(-1, 1, 15)
        p = PauliRep(x[:3], x[3:6], x[6:].reshape(3, 3))
        a = global_invariants(p).as_tuple()
        b = closed_form_invariants(local_invariants(p)).as_tuple()
        assert np.allclose(a, b, atol=1e-12, rtol=1e-12)


def test_printed_a1_sign_is_wrong_for_bell():
    # with det C = -1 the printed A1 = +8 det C - 8 sCt would give -8; the trace route gives +8
    assert global_invariants(bell_state()).a1 == pytest.approx(8.0)
    assert closed_form_invariants(local_invariants(bell_state())).a0 == pytest.approx(3.0)


def test_quartic_roots_examples():
    assert quartic_roots(GlobalInvariants(6, 8, 3)) == pytest.approx([-3, 1, 1, 1], abs=1e-9)
    assert quartic_roots(GlobalInvariants(0, 0, 0)) == pytest.approx([0, 0, 0, 0], abs=0)
    with pytest.raises(NoRealRootsError):
        quartic_roots(GlobalInvariants(2, 0, -2))


def test_quartic_roots_match_eigenvalues():
    rng = np.random.default_rng(2)
    for _ in range(200):
        k = _random_traceless_hermitian(rng)
        roots = quartic_roots(invariants_of_k(k))
        ev = np.linalg.eigvalsh(k)
        assert np.allclose(roots, ev, atol=1e-7 * max(1, np.abs(ev).max()))
        assert abs(roots.sum()) <= 1e-9 * max(1, np.abs(ev).max())


def test_positivity_inequality_examples():
    assert positivity_inequalities(GlobalInvariants(6, 8, 3)) == pytest.approx([0, 0, 0], abs=0)
    assert positivity_inequalities(GlobalInvariants(0, 0, 0)) == pytest.approx([1, 4, 6])
    # K = -2 sigma_1 x 1, a Bloch vector of length 2
    k = -2 * np.kron([[0, 1], [1, 0]], np.eye(2))
    g = invariants_of_k(k)
    assert g.a2 == pytest.approx(8)
    assert positivity_inequalities(g)[2] == pytest.approx(-2)


def test_first_margin_is_product_of_root_gaps():
    rng = np.random.default_rng(3)
    for _ in range(50):
        k = _random_traceless_hermitian(rng, 0.5)
        ev = np.linalg.eigvalsh(k)
        assert positivity_inequalities(invariants_of_k(k))[0] == pytest.approx(np.prod(1 - ev), abs=1e-10)


def test_inequalities_equivalent_to_k_le_one():
    rng = np.random.default_rng(4)
    for _ in range(3000):
        k = _random_traceless_hermitian(rng, rng.uniform(0.05, 1.0))
        by_margins = bool(np.all(positivity_inequalities(invariants_of_k(k)) >= -1e-9))
        assert by_margins == (np.linalg.eigvalsh(k)[-1] <= 1 + 1e-9)


def test_lambda_parameterization_examples():
    lam = lambda_parameterization([-3, 1, 1, 1])
    assert (lam.l1, lam.l2, lam.l3) == (-1, 1, 1)
    assert lam.invariants().a1 == 8
    assert lambda_parameterization([0, 0, 0, 0]).roots() == pytest.approx([0, 0, 0, 0])
    with pytest.raises(DomainError):
        lambda_parameterization([1, 1, 1, 1])


def test_lambda_round_trip_and_appendix_identities():
    rng = np.random.default_rng(5)
    for _ in range(200):
        k = _random_traceless_hermitian(rng, 0.4)
        ev = rng.permutation(np.linalg.eigvalsh(k))
        ev -= ev.mean()
        lam = lambda_parameterization(ev)
        assert np.allclose(lam.roots(), ev, atol=1e-12)
        g, g_lam = invariants_of_k(np.diag(ev)), lam.invariants()
        assert np.allclose(g.as_tuple(), g_lam.as_tuple(), atol=1e-9)
        if np.all(positivity_inequalities(g) >= 0):
            assert max(lam.l1 ** 2, lam.l2 ** 2, lam.l3 ** 2) <= 1 + 1e-9


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2 ** 31 - 1))
def test_invariance_under_local_rotations_and_hw(seed):
    p = random_state(seed)
    r = LocalRotation.random(np.random.default_rng(seed + 1))
    g = global_invariants(p).as_tuple()
    assert g[0] <= 6 + 1e-12
    assert np.allclose(global_invariants(apply_local(p, r)).as_tuple(), g, atol=1e-10)
    assert np.allclose(global_invariants(hw_transform(p)).as_tuple(), g, atol=1e-12)
    assert np.allclose(local_invariants(apply_local(p, r)).as_tuple(), local_invariants(p).as_tuple(), atol=1e-10)


def test_k_relates_to_matrix():
    p = random_state(9)
    g = global_invariants(p)
    ev = 1 - 4 * np.linalg.eigvalsh(to_matrix(p))
    assert g.a2 == pytest.approx(np.sum(ev ** 2) / 2)
