import numpy as np
import pytest

from sqgreen import (
    BranchPointError,
    DomainError,
    PiecewisePotential,
    SquareBarrier,
    build_chi,
    build_omega,
    chi_coefficients,
    chi_wave,
    interface_matrix,
    omega_wave,
    outer_wronskian,
    wronskian,
    wronskian_closed_form,
)

from conftest import close, random_instances


def random_staircase(rng, n_steps):
    bps = np.sort(rng.uniform(0.3, 6.0, size=n_steps))
    while np.any(np.diff(bps) < 0.2):
        bps = np.sort(rng.uniform(0.3, 6.0, size=n_steps))
    heights = list(rng.uniform(-6.0, 8.0, size=n_steps)) + [0.0]
    return PiecewisePotential(tuple(bps), tuple(heights))


class TestPotential:
    def test_invariants(self):
        with pytest.raises(DomainError):
            PiecewisePotential((1.0, 0.5), (0.0, 1.0, 0.0))
        with pytest.raises(DomainError):
            PiecewisePotential((1.0, 2.0), (0.0, 1.0, 3.0))  # tail must vanish
        with pytest.raises(DomainError):
            PiecewisePotential((-1.0, 2.0), (0.0, 1.0, 0.0))
        with pytest.raises(DomainError):
            PiecewisePotential((1.0,), (0.0, 1.0, 0.0))  # length mismatch

    def test_square_barrier_embedding(self, barrier):
        pw = PiecewisePotential.from_square_barrier(barrier)
        assert pw.breakpoints == (1.0, 2.0)
        assert pw.heights == (0.0, 5.0, 0.0)
        for r in (0.5, 1.0, 1.5, 2.0, 3.0):
            assert pw.value_at(r) == barrier.value_at(r)


class TestInterfaceMatrix:
    def test_identity_when_momenta_match(self):
        m = interface_matrix(1.3 - 0.2j, 1.3 - 0.2j, 1.7).as_array()
        assert close(m, np.eye(2), atol=1e-15)

    def test_determinant_is_momentum_ratio(self, rng):
        for _ in range(25):
            kl = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            kr = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            if abs(kr) < 0.1 or abs(kl) < 0.1:
                continue
            det = interface_matrix(kl, kr, float(rng.uniform(0.1, 4.0))).det()
            assert abs(det - kl / kr) <= 1e-12 * abs(kl / kr)

    def test_preserves_value_and_derivative(self, rng):
        for _ in range(25):
            kl = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            kr = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            if abs(kr) < 0.1:
                continue
            r = float(rng.uniform(0.1, 4.0))
            c = (complex(rng.normal(), rng.normal()), complex(rng.normal(), rng.normal()))
            d = interface_matrix(kl, kr, r).apply(c)

            def side(coeff, k):
                val = coeff[0] * np.exp(1j * k * r) + coeff[1] * np.exp(-1j * k * r)
                der = 1j * k * (coeff[0] * np.exp(1j * k * r) - coeff[1] * np.exp(-1j * k * r))
                return val, der

            vl, dl = side(c, kl)
            vr, dr = side(d, kr)
            assert abs(vl - vr) <= 1e-12 * (1 + abs(vl))
            assert abs(dl - dr) <= 1e-12 * (1 + abs(dl))

    def test_composition_reproduces_outer_amplitudes(self, barrier):
        e = 2.0 + 0.7j
        from sqgreen.model import momenta

        k, q = momenta(barrier, e)
        inner = (1.0 / 2j, -1.0 / 2j)
        mid = interface_matrix(k, q, barrier.a).apply(inner)
        outer = interface_matrix(q, k, barrier.b).apply(mid)
        cs = chi_coefficients(barrier, e)
        assert close(outer[0], cs.c3, rtol=1e-12)
        assert close(outer[1], cs.c4, rtol=1e-12)

    def test_vanishing_right_momentum_rejected(self):
        with pytest.raises(BranchPointError):
            interface_matrix(1.0, 0.0, 1.0)


class TestEngineWaves:
    def test_free_chi_is_sine(self):
        pw = PiecewisePotential((), (0.0,))
        wave = build_chi(pw, 1.0 + 0j)
        r = np.linspace(0.0, 8.0, 33)
        assert close(wave.value(r), np.sin(r), atol=1e-13)

    def test_free_omega_plus_is_exponential(self):
        pw = PiecewisePotential((), (0.0,))
        wave = build_omega(pw, 1.0 + 0j, "plus")
        r = np.linspace(0.0, 8.0, 33)
        assert close(wave.value(r), np.exp(1j * r), atol=1e-13)

    def test_chi_vanishes_at_origin(self, rng):
        for n in (1, 3, 5):
            pw = random_staircase(rng, n)
            assert build_chi(pw, 1.3 + 0.4j).value(0.0) == 0.0

    def test_square_barrier_equivalence(self, rng):
        for p, e in random_instances(rng, 12):
            pw = PiecewisePotential.from_square_barrier(p)
            for energy in (complex(e), complex(e, 0.9), complex(e, -0.9)):
                r = np.concatenate(
                    [np.linspace(0.05, p.b + 2.0, 17), [p.a, p.b]]
                )
                pairs = [
                    (chi_wave(p, energy), build_chi(pw, energy)),
                    (omega_wave(p, energy, "plus"), build_omega(pw, energy, "plus")),
                    (omega_wave(p, energy, "minus"), build_omega(pw, energy, "minus")),
                ]
                for closed, engine in pairs:
                    vc, ve = closed.value(r), engine.value(r)
                    assert np.max(np.abs(vc - ve) / (1.0 + np.abs(vc))) <= 1e-12
                    dc, de = closed.derivative(r), engine.derivative(r)
                    assert np.max(np.abs(dc - de) / (1.0 + np.abs(dc))) <= 1e-12

    def test_split_segment_invariance(self, barrier):
        e = 2.0 + 0.7j
        whole = PiecewisePotential.from_square_barrier(barrier)
        mid = 0.5 * (barrier.a + barrier.b)
        split = PiecewisePotential(
            (barrier.a, mid, barrier.b), (0.0, barrier.v0, barrier.v0, 0.0)
        )
        r = np.linspace(0.05, barrier.b + 3.0, 41)
        for direction in ("plus", "minus"):
            w1 = build_omega(whole, e, direction)
            w2 = build_omega(split, e, direction)
            assert np.max(np.abs(w1.value(r) - w2.value(r)) / (1.0 + np.abs(w1.value(r)))) <= 1e-12
        c1, c2 = build_chi(whole, e), build_chi(split, e)
        assert np.max(np.abs(c1.value(r) - c2.value(r)) / (1.0 + np.abs(c1.value(r)))) <= 1e-12

    def test_wronskian_constant_across_many_regions(self, rng):
        for n in (2, 4, 8):
            pw = random_staircase(rng, n)
            e = complex(rng.uniform(0.5, 6.0), rng.uniform(0.2, 1.5))
            chi = build_chi(pw, e)
            om = build_omega(pw, e, "plus")
            w_ref = outer_wronskian(chi, om)
            probes = [0.5 * pw.breakpoints[0]]
            probes += [0.5 * (x + y) for x, y in zip(pw.breakpoints, pw.breakpoints[1:])]
            probes.append(pw.breakpoints[-1] + 1.0)
            for r in probes:
                assert abs(wronskian(chi, om, r) - w_ref) <= 1e-10 * abs(w_ref)

    def test_engine_wronskian_matches_closed_form(self, rng):
        for p, e in random_instances(rng, 8):
            pw = PiecewisePotential.from_square_barrier(p)
            energy = complex(e, 0.6)
            for direction in ("plus", "minus"):
                w_engine = outer_wronskian(build_chi(pw, energy), build_omega(pw, energy, direction))
                w_closed = wronskian_closed_form(p, energy, direction)
                assert abs(w_engine - w_closed) <= 1e-12 * abs(w_closed)

    def test_degenerate_region_rejected(self):
        pw = PiecewisePotential((1.0, 2.0), (0.0, 3.0, 0.0))
        with pytest.raises(BranchPointError):
            build_chi(pw, 3.0 + 0j)
        with pytest.raises(BranchPointError):
            build_omega(pw, 0.0 + 0j, "plus")

    def test_strongly_evanescent_segment_stays_finite(self):
        # tall wide step: amplitudes relative to local edges stay representable
        pw = PiecewisePotential((2.0, 6.0), (0.0, 400.0, 0.0))
        e = 1.0 + 0.5j
        chi = build_chi(pw, e)
        om = build_omega(pw, e, "plus")
        r = np.linspace(0.1, 7.0, 29)
        assert np.all(np.isfinite(chi.value(r).astype(complex)))
        assert np.all(np.isfinite(om.value(r).astype(complex)))
        w_ref = outer_wronskian(chi, om)
        assert np.isfinite(w_ref)
        # continuity still holds at both edges
        for wave in (chi, om):
            for bp in pw.breakpoints:
                l, rr = wave.value(bp, "-"), wave.value(bp, "+")
                assert abs(l - rr) <= 1e-9 * (1.0 + abs(rr))
