import math

import numpy as np
import pytest

from qmem.analytic import (
    InputState,
    PhaseLabel,
    classify_subclass,
    ensemble_average_check,
    holevo_covariant,
    optimize_symmetric,
    output_entries,
    state_vector,
    subclass_candidates,
    subclass_eigenvalues,
    symmetric_entropy,
    symmetric_spectrum,
    y_functional,
)
from qmem.channel import Channel, SubclassParams, SymmetricChannelParams
from qmem.errors import ValidationError
from qmem.linalg import binary_entropy, hermitian_eigenvalues, von_neumann_entropy


def _random_symmetric(rng):
    p, q, r, eta, s = rng.dirichlet(np.ones(5)) * 0.5
    return SymmetricChannelParams(
        p=p, s=s, q=q, r=r, eta=eta,
        xi=rng.uniform(-eta, eta), gamma=rng.uniform(-eta, eta),
    )


def test_state_vector_normalized():
    for theta in (0.0, 0.4, math.pi / 4):
        v = state_vector(InputState(theta, 1.3))
        assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-15)
        assert v[1] == 0 and v[2] == 0


class TestOutputEntries:
    def test_matches_direct_channel_application(self, rng):
        """The closed-form entries must reproduce the full 16-term Kraus sum
        on the invariant input family."""
        for _ in range(30):
            params = _random_symmetric(rng)
            st = InputState(rng.uniform(0, math.pi / 2), rng.uniform(0, 2 * math.pi))
            psi = state_vector(st)
            direct = Channel.from_symmetric(params).apply(np.outer(psi, psi.conj()))
            assert np.abs(output_entries(params, st).as_matrix() - direct).max() < 1e-12

    def test_block_structure(self, rng):
        params = _random_symmetric(rng)
        m = output_entries(params, InputState(0.7, 0.3)).as_matrix()
        # outer block {0,3} and inner block {1,2} never mix
        for a, b in ((0, 1), (0, 2), (3, 1), (3, 2)):
            assert m[a, b] == 0 and m[b, a] == 0


class TestSpectra:
    def test_symmetric_spectrum_vs_dense(self, rng):
        for _ in range(200):
            params = _random_symmetric(rng)
            st = InputState(rng.uniform(0, math.pi / 2), rng.uniform(0, 2 * math.pi))
            closed = symmetric_spectrum(params, st)
            dense = hermitian_eigenvalues(output_entries(params, st).as_matrix())
            assert np.abs(closed - dense).max() < 1e-12

    def test_subclass_eigenvalues_vs_dense(self, rng):
        for _ in range(200):
            p, q, r = rng.dirichlet(np.ones(3)) * 0.5
            sub = SubclassParams(p=p, q=q, r=r)
            st = InputState(rng.uniform(0, math.pi / 2), rng.uniform(0, 2 * math.pi))
            closed = subclass_eigenvalues(sub, st)
            dense = hermitian_eigenvalues(
                output_entries(sub.as_symmetric(), st).as_matrix()
            )
            assert np.abs(np.sort(closed) - np.sort(dense)).max() < 1e-10

    def test_subclass_rank_two(self, rng):
        sub = SubclassParams(p=0.2, q=0.2, r=0.1)
        lam = subclass_eigenvalues(sub, InputState(0.6, 1.0))
        assert lam[2] == 0.0 and lam[3] == 0.0
        assert lam.sum() == pytest.approx(1.0, abs=1e-12)

    def test_extremal_state_spectra(self):
        """theta=0 gives {1-2p, 2p}; the Bell states give {1-2r, 2r} and
        {1-2q, 2q}."""
        sub = SubclassParams(p=0.15, q=0.25, r=0.1)
        cases = [
            (InputState(0.0, 0.0), 2 * sub.p),
            (InputState(math.pi / 4, 0.0), 2 * sub.r),
            (InputState(math.pi / 4, math.pi / 2), 2 * sub.q),
        ]
        for st, x in cases:
            lam = subclass_eigenvalues(sub, st)
            assert np.allclose(np.sort(lam)[-2:], sorted([1 - x, x]), atol=1e-12)


class TestClassification:
    def test_candidate_entropies(self):
        sub = SubclassParams(p=0.15, q=0.25, r=0.1)
        cands = subclass_candidates(sub)
        assert [c[0] for c in cands] == [
            PhaseLabel.PRODUCT, PhaseLabel.ENT_PHI0, PhaseLabel.ENT_PHIHALF,
        ]
        assert cands[0][2] == pytest.approx(binary_entropy(0.3))
        assert cands[1][2] == pytest.approx(binary_entropy(0.2))
        assert cands[2][2] == pytest.approx(binary_entropy(0.5))

    def test_triple_point_tie(self):
        res = classify_subclass(SubclassParams(p=1 / 6, q=1 / 6, r=1 / 6))
        assert res.label is PhaseLabel.TIE

    def test_product_region(self):
        # p = 0.05 <= min(q, r)
        res = classify_subclass(SubclassParams(p=0.05, q=0.25, r=0.2))
        assert res.label is PhaseLabel.PRODUCT
        assert res.state.theta == 0.0

    def test_entangled_phases_mirror_across_q_equals_r(self):
        a = classify_subclass(SubclassParams(p=0.3, q=0.15, r=0.05))
        b = classify_subclass(SubclassParams(p=0.3, q=0.05, r=0.15))
        assert a.label is PhaseLabel.ENT_PHI0
        assert b.label is PhaseLabel.ENT_PHIHALF
        assert a.entropy_bits == pytest.approx(b.entropy_bits, abs=1e-15)

    def test_boundary_within_tol_is_tie(self):
        # r = p exactly: product and phi=0 candidates coincide
        res = classify_subclass(SubclassParams(p=0.1, q=0.3, r=0.1))
        assert res.label is PhaseLabel.TIE

    def test_equal_q_r_below_triple_point_is_tie(self):
        """Both entangled candidates coincide on the q = r line where they
        beat the product state."""
        res = classify_subclass(SubclassParams(p=0.4, q=0.05, r=0.05))
        assert res.label is PhaseLabel.TIE
        assert res.entropy_bits == pytest.approx(binary_entropy(0.1), abs=1e-15)

    def test_classification_minimizes_over_grid(self, rng):
        """The winning candidate is never beaten by a dense sweep of the
        invariant input family."""
        for _ in range(10):
            p, q, r = rng.dirichlet(np.ones(3)) * 0.5
            sub = SubclassParams(p=p, q=q, r=r)
            best = classify_subclass(sub).entropy_bits
            for theta in np.linspace(0, math.pi / 2, 25):
                for phi in np.linspace(0, 2 * math.pi, 25):
                    lam = subclass_eigenvalues(sub, InputState(theta, phi))
                    assert von_neumann_entropy(lam) >= best - 1e-9


class TestYFunctional:
    def test_sign_rule_matches_classifier(self, rng):
        """Interior points: optimum is the product state iff min-phi Y >= 0,
        else the Bell state whose phi minimizes Y."""
        n = 0
        for _ in range(300):
            p, q, r = rng.dirichlet(np.ones(3)) * 0.5
            sub = SubclassParams(p=p, q=q, r=r)
            y0 = y_functional(sub, 0.0)
            yh = y_functional(sub, math.pi / 2)
            if abs(min(y0, yh)) < 1e-6 or abs(y0 - yh) < 1e-6:
                continue
            n += 1
            got = classify_subclass(sub).label
            if min(y0, yh) >= 0:
                assert got is PhaseLabel.PRODUCT
            elif y0 < yh:
                assert got is PhaseLabel.ENT_PHI0
            else:
                assert got is PhaseLabel.ENT_PHIHALF
        assert n > 100

    def test_interpolates_between_phi_extremes(self):
        sub = SubclassParams(p=0.1, q=0.25, r=0.15)
        y0 = y_functional(sub, 0.0)
        yh = y_functional(sub, math.pi / 2)
        ymid = y_functional(sub, math.pi / 4)
        assert min(y0, yh) <= ymid <= max(y0, yh)


class TestHolevo:
    def test_complementarity(self):
        assert holevo_covariant(0.0) == 2.0
        assert holevo_covariant(2.0) == 0.0
        assert holevo_covariant(0.75) == pytest.approx(1.25)

    def test_range_validation(self):
        with pytest.raises(ValidationError):
            holevo_covariant(2.5)
        with pytest.raises(ValidationError):
            holevo_covariant(-0.5)

    def test_ensemble_average_is_maximally_mixed(self, rng):
        for _ in range(10):
            ch = Channel.from_symmetric(_random_symmetric(rng))
            st = InputState(rng.uniform(0, math.pi / 2), rng.uniform(0, 2 * math.pi))
            assert ensemble_average_check(ch, st) < 1e-12


class TestOptimizeSymmetric:
    def test_matches_subclass_candidates(self, rng):
        for _ in range(5):
            p, q, r = rng.dirichlet(np.ones(3)) * 0.5
            sub = SubclassParams(p=p, q=q, r=r)
            _, s_opt = optimize_symmetric(sub.as_symmetric())
            s_best = min(c[2] for c in subclass_candidates(sub))
            assert s_opt == pytest.approx(s_best, abs=1e-9)

    def test_never_above_grid_samples(self, rng):
        params = _random_symmetric(rng)
        _, s_opt = optimize_symmetric(params)
        for theta in np.linspace(0, math.pi / 2, 37):
            for phi in np.linspace(0, 2 * math.pi, 41):
                assert s_opt <= symmetric_entropy(params, InputState(theta, phi)) + 1e-12

    def test_grid_validation(self, rng):
        with pytest.raises(ValidationError):
            optimize_symmetric(_random_symmetric(rng), grid_theta=8)
