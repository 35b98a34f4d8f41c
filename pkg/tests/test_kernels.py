import math

import numpy as np
import pytest

from conftest import random_pure_states
from qmem.analytic import InputState, state_vector, symmetric_entropy
from qmem.channel import Channel, SymmetricChannelParams
from qmem.kernels import backend, bruteforce_entropies


def test_backend_reports_valid_name():
    assert backend() in ("compiled", "numpy")


def test_backends_agree(rng):
    probs = rng.dirichlet(np.ones(16)).reshape(4, 4)
    amps = random_pure_states(rng, 500)
    fast = bruteforce_entropies(probs, amps)
    pure = bruteforce_entropies(probs, amps, force_pure=True)
    assert np.abs(fast - pure).max() < 1e-12


def test_matches_closed_form_on_invariant_family(rng):
    p, q, r, eta, s = rng.dirichlet(np.ones(5)) * 0.5
    params = SymmetricChannelParams(p=p, s=s, q=q, r=r, eta=eta, xi=0.3 * eta, gamma=-0.5 * eta)
    probs = Channel.from_symmetric(params).probs
    states = [InputState(t, f) for t in np.linspace(0, math.pi / 2, 7)
              for f in np.linspace(0, 2 * math.pi, 7)]
    amps = np.array([state_vector(st) for st in states])
    got = bruteforce_entropies(probs, amps)
    want = np.array([symmetric_entropy(params, st) for st in states])
    assert np.abs(got - want).max() < 1e-12


def test_accepts_readonly_arrays(rng):
    ch = Channel.from_general(rng.dirichlet(np.ones(16)).reshape(4, 4))
    assert not ch.probs.flags.writeable
    amps = random_pure_states(rng, 3)
    amps.setflags(write=False)
    out = bruteforce_entropies(ch.probs, amps)
    assert out.shape == (3,)


def test_single_state_promoted_to_batch(rng):
    probs = rng.dirichlet(np.ones(16)).reshape(4, 4)
    amps = random_pure_states(rng, 1)
    assert bruteforce_entropies(probs, amps[0]).shape == (1,)


def test_shape_validation(rng):
    with pytest.raises(ValueError):
        bruteforce_entropies(np.ones((2, 2)) / 4, random_pure_states(rng, 2))
    with pytest.raises(ValueError):
        bruteforce_entropies(np.full((4, 4), 1 / 16), np.ones((2, 3), dtype=complex))


def test_pure_output_for_unitary_channel(rng):
    probs = np.zeros((4, 4))
    probs[2, 1] = 1.0  # a single Pauli-pair error is unitary
    amps = random_pure_states(rng, 50)
    assert np.abs(bruteforce_entropies(probs, amps)).max() < 1e-10


def test_maximally_mixing_case():
    probs = np.full((4, 4), 1 / 16)  # uniform Pauli twirl
    amps = np.zeros((1, 4), dtype=complex)
    amps[0, 0] = 1.0
    assert bruteforce_entropies(probs, amps)[0] == pytest.approx(2.0, abs=1e-10)
