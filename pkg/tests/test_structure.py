"""Structure oracles: spectra, orbits, irreducibility, decomposition."""

import numpy as np
import pytest

from support import finite_so3_samples, finite_sl2_samples
from qso3.errors import CtxMismatch
from qso3.psihom import compose
from qso3.qscalar import HalfInt, generic_ctx, root_of_unity_ctx
from qso3.structure import (are_equivalent, commutant, decompose, fingerprint,
                            i1_spectrum, intertwiners, is_irreducible_burnside,
                            orbit_span)
from qso3 import uqso3 as U
from qso3.uqsl2 import t_omega_l

H = HalfInt.parse


class TestSpectrum:
    def test_weight_family(self, q4):
        assert i1_spectrum(U.r1_l(q4, H("1/2"))) == [
            (pytest.approx(-0.4j), 1), (pytest.approx(0.4j), 1)]

    def test_twisted_degeneracy(self, q4):
        assert i1_spectrum(U.r_pm_i_l(q4, H("1/2"), 1)) == [
            (pytest.approx(-2 / 3), 2)]

    def test_degenerate_cyclic_exactly_one_single(self):
        ctx = root_of_unity_ctx(10, 1)
        lam = U.degenerate_lambdas(ctx, trivial_ab=True)
        # no fully paired lambda for the wrap-free chain at p' odd
        assert lam == []
        rep = U.r_ab_lambda(ctx, 0, 0, complex(ctx.s) ** 3)
        mults = sorted(m for _, m in i1_spectrum(rep))
        assert mults.count(1) == 1


class TestOrbitSpan:
    def test_full_space_from_any_seed(self, q13):
        rep = U.r1_l(q13, 1)
        seed = np.zeros(3)
        seed[1] = 1.0
        assert orbit_span(rep, seed).shape[1] == 3

    def test_invariant_plane(self, q13):
        rep = U.r_pm_i_l(q13, H("3/2"), 1)
        seed = np.zeros(4, complex)
        seed[2], seed[1] = 1.0, 1j  # |1/2> + i|-1/2>
        assert orbit_span(rep, seed).shape[1] == 2

    def test_line_in_trivial(self, q13):
        rep = U.r1_l(q13, 0)
        assert orbit_span(rep, np.array([1.0])).shape[1] == 1


class TestIrreducibilityOracles:
    def test_weight_families_irreducible(self, q13):
        for l in (0, H("1/2"), H("3/2"), H("9/2")):
            rep = U.r1_l(q13, l)
            irr, dim = is_irreducible_burnside(rep)
            assert irr and dim == rep.dim ** 2
            assert commutant(rep)[0] == 1

    def test_twisted_families_reducible(self, q13):
        for l in (H("1/2"), H("3/2"), H("5/2")):
            rep = U.r_pm_i_l(q13, l, 1)
            irr, dim = is_irreducible_burnside(rep)
            assert not irr and dim == rep.dim ** 2 // 2
            assert commutant(rep)[0] == 2

    def test_oracles_agree_across_registry(self, q13, p5, p8):
        # full algebra span <=> trivial commutant AND no proper invariant
        # subspace; indecomposable chains may pair a trivial commutant with
        # reducibility, which the lattice search must then witness
        count = 0
        for ctx in (q13, p5, p8):
            samples = finite_so3_samples(ctx) + finite_sl2_samples(ctx)
            for label, rep in samples:
                irr, _ = is_irreducible_burnside(rep)
                cdim = commutant(rep)[0]
                if irr:
                    assert cdim == 1, (label, cdim)
                if cdim > 1:
                    assert not irr, label
                if rep.flags.get("reducible"):
                    assert not irr, label
                if cdim == 1 and not irr:
                    report = decompose(rep)
                    assert not report.is_direct_sum
                    assert any(b.shape[1] < rep.dim for b in report.lattice), label
                count += 1
        assert count >= 100


class TestCommutant:
    def test_reducible_constant_family(self, p5):
        rep = U.q_prime_lambda(p5, 1.0)
        assert commutant(rep)[0] >= 2

    def test_irreducible_is_schur(self, p5):
        rep = U.q_prime_lambda(p5, 2.0)
        assert commutant(rep)[0] == 1


class TestDecompose:
    def test_split_structure(self, q13):
        report = decompose(U.r_pm_i_l(q13, H("5/2"), 1))
        assert report.is_direct_sum
        assert report.component_dims == [3, 3]
        assert report.commutant_dim == 2
        assert report.combined_condition < 10
        for basis, comp in report.components:
            irr, _ = is_irreducible_burnside(comp)
            assert irr
            from qso3.repcore import verify_so3

            assert verify_so3(comp).max_residual <= 1e-9

    def test_reassembly(self, q13):
        rep = U.r_pm_i_l(q13, H("3/2"), -1)
        report = decompose(rep)
        order = np.column_stack([b for b, _ in report.components])
        blocks = [c.I2 for _, c in report.components]
        block_mat = np.zeros_like(rep.I2)
        at = 0
        for blk in blocks:
            block_mat[at:at + blk.shape[0], at:at + blk.shape[0]] = blk
            at += blk.shape[0]
        back = order @ block_mat @ np.linalg.inv(order)
        scale = max(1.0, np.max(np.abs(rep.I2)))
        assert np.max(np.abs(back - rep.I2)) <= 1e-8 * scale

    def test_irreducible_input(self, q13):
        report = decompose(U.r1_l(q13, 2))
        assert report.is_irreducible and report.is_direct_sum
        assert report.component_dims == [5]

    def test_indecomposable_chain(self):
        # wrap-free cyclic chain with a one-way arrow: reducible but not a
        # direct sum; the lattice records the invariant line
        ctx = root_of_unity_ctx(10, 1)
        rep = U.r_ab_lambda(ctx, 0, 0, complex(ctx.s) ** 3)
        report = decompose(rep)
        assert not report.is_direct_sum
        assert not report.is_irreducible
        assert report.components == []
        assert any(b.shape[1] < rep.dim for b in report.lattice)

    def test_deterministic(self, q13):
        rep = U.r_pm_i_l(q13, H("5/2"), 1)
        a = decompose(rep, seed=99)
        b = decompose(rep, seed=99)
        assert np.allclose(a.components[0][0], b.components[0][0])

    def test_partial_split_flags_indecomposable_block(self, p8):
        # direct sum of an irreducible weight family and an indecomposable
        # chain: the split separates the blocks and marks the chain as a
        # reducible component
        from qso3.repcore import FamilyDescriptor, So3FiniteRep

        a = U.r1_l(p8, 1)
        lam = complex(p8.s)  # eta_2 vanishes: the chain breaks
        b = U.r_ab_lambda(p8, 0, 0, lam)
        assert not is_irreducible_burnside(b)[0]
        assert commutant(b)[0] == 1
        n = a.dim + b.dim
        mats = {}
        for name in ("I1", "I2", "I3"):
            mats[name] = np.zeros((n, n), complex)
            mats[name][:a.dim, :a.dim] = getattr(a, name)
            mats[name][a.dim:, a.dim:] = getattr(b, name)
        summed = So3FiniteRep(p8, mats["I1"], mats["I2"], mats["I3"],
                              FamilyDescriptor("sum", {}), {})
        report = decompose(summed)
        assert report.is_direct_sum
        assert report.component_dims == [3, 4]
        flags = {comp.dim: comp.flags["component_irreducible"]
                 for _, comp in report.components}
        assert flags == {3: True, 4: False}


class TestIntertwiners:
    def test_self_intertwiner_contains_identity(self, q13):
        rep = U.r1_l(q13, 1)
        dim, basis = intertwiners(rep, rep)
        assert dim == 1
        X = basis[0]
        assert np.allclose(X / X[0, 0], np.eye(3), atol=1e-8)

    def test_relabeling_equivalence(self, q13):
        co = compose(t_omega_l(q13, H("3/2"), -1))
        dim, basis = intertwiners(co, U.r1_l(q13, H("3/2")))
        assert dim == 1
        assert np.linalg.matrix_rank(basis[0], tol=1e-10) == 4

    def test_split_families_disjoint(self, q4):
        import itertools

        reps = [U.r_split_n(q4, 2, (s1, s2))
                for s1 in (1, -1) for s2 in (1, -1)]
        for a, b in itertools.combinations(reps, 2):
            assert intertwiners(a, b)[0] == 0

    def test_ctx_mismatch(self, q13, q4):
        with pytest.raises(CtxMismatch):
            intertwiners(U.r1_l(q13, 1), U.r1_l(q4, 1))


class TestFingerprint:
    def test_separates_split_signs(self, q4):
        fps = {}
        for s1 in (1, -1):
            for s2 in (1, -1):
                fps[(s1, s2)] = fingerprint(U.r_split_n(q4, 2, (s1, s2)))
        assert not fps[(1, 1)].matches(fps[(1, -1)])      # I2 trace
        assert not fps[(1, 1)].matches(fps[(-1, 1)])      # I1 spectrum
        assert fps[(1, 1)].matches(fps[(1, 1)])

    def test_weight_vs_split_disjoint(self, q4):
        f_weight = fingerprint(U.r1_l(q4, 1))
        f_split = fingerprint(U.r_split_n(q4, 3, (1, 1)))
        assert not f_weight.matches(f_split)


class TestEquivalenceDecisions:
    def test_decomposed_matching(self, q13):
        # reducible pair matched component-by-component
        a = U.r_pm_i_l(q13, H("3/2"), 1)
        D = np.diag([1.0, -1.0, 1.0, -1.0])
        from qso3.repcore import FamilyDescriptor, So3FiniteRep

        twisted = So3FiniteRep(q13, D @ a.I1 @ D, D @ a.I2 @ D, D @ a.I3 @ D,
                               FamilyDescriptor("conj", {}), {})
        assert are_equivalent(a, twisted)

    def test_inequivalent_same_dim(self, q13):
        assert not are_equivalent(U.r1_l(q13, 1), U.r_split_n(q13, 3, (1, 1)))

    def test_equivalence_invariant_under_conjugation(self, q13):
        from qso3.repcore import FamilyDescriptor, So3FiniteRep

        rng = np.random.default_rng(5)
        for l in (1, H("3/2")):
            rep = U.r1_l(q13, l)
            n = rep.dim
            S = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            Sinv = np.linalg.inv(S)
            conj = So3FiniteRep(q13, S @ rep.I1 @ Sinv, S @ rep.I2 @ Sinv,
                                S @ rep.I3 @ Sinv,
                                FamilyDescriptor("conj", {}), {})
            assert are_equivalent(rep, conj)
            assert not are_equivalent(U.r_split_n(q13, n, (1, 1)), conj)
