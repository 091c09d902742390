"""Unit tests for kernel specs: validation, normalization and evaluation."""

from fractions import Fraction

import mpmath
import pytest

from cnpd.models.errors import CNPError, ErrorCode
from cnpd.models.kernel import KernelSpec, RawSpec
from cnpd.models.series import DirichletCoefficients
from cnpd.services.kernelspec import (
    f_eval,
    kernel_eval,
    kernel_series,
    load_spec,
    normalize,
    one_minus_inverse,
    solve_rho,
    spec_from_weights,
    spec_to_wire,
    validate,
    weight_expansion,
)
from tests.conftest import make_spec


def _raw(b: list[str], n: list[int]) -> RawSpec:
    return RawSpec(b=tuple(Fraction(x) for x in b), n=tuple(n))


class TestValidation:
    """Tests for the spec clauses."""

    def test_valid_spec(self) -> None:
        """A spec with weights summing to 1 validates."""
        spec = validate(_raw(["1/2", "1/3", "1/6"], [2, 3, 5]))
        assert isinstance(spec, KernelSpec)
        assert spec.d == 3
        assert spec.weight_sum == 1

    def test_weights_sum_reports_deficit(self) -> None:
        """A wrong sum names the clause and the exact deficit."""
        with pytest.raises(CNPError) as exc:
            validate(_raw(["1/2", "1/3"], [2, 3]))
        assert exc.value.code is ErrorCode.WEIGHTS_SUM
        assert exc.value.violated_clause == "weights_sum"
        assert exc.value.details is not None
        assert exc.value.details["deficit"] == "1/6"

    def test_duplicate_frequency(self) -> None:
        """Repeated frequencies are named by position."""
        with pytest.raises(CNPError) as exc:
            _raw(["1/2", "1/2"], [3, 3])
        assert exc.value.code is ErrorCode.DUPLICATE_FREQUENCY
        assert exc.value.violated_clause == "distinct_frequencies"
        assert exc.value.details is not None
        assert exc.value.details["indices"] == [1, 2]

    def test_frequency_too_small(self) -> None:
        """Frequencies start at 2."""
        with pytest.raises(CNPError) as exc:
            _raw(["1/2", "1/2"], [1, 3])
        assert exc.value.code is ErrorCode.FREQUENCY_TOO_SMALL
        assert exc.value.violated_clause == "frequency_range"

    def test_nonpositive_weight(self) -> None:
        """Weights must be positive."""
        with pytest.raises(CNPError) as exc:
            _raw(["0", "1"], [2, 3])
        assert exc.value.code is ErrorCode.NONPOSITIVE_WEIGHT
        assert exc.value.violated_clause == "positive_weights"

    def test_dimension_mismatch(self) -> None:
        """b and n must have the same nonzero length."""
        with pytest.raises(CNPError) as exc:
            _raw(["1"], [2, 3])
        assert exc.value.violated_clause == "dimension"
        with pytest.raises(CNPError):
            _raw([], [])

    def test_clause_order(self) -> None:
        """Frequency clauses are reported before the weight clauses."""
        with pytest.raises(CNPError) as exc:
            validate(_raw(["-1", "5"], [2, 2]))
        assert exc.value.code is ErrorCode.DUPLICATE_FREQUENCY


class TestLoadSpec:
    """Tests for reading spec documents."""

    def test_load_and_write_back(self) -> None:
        """Rationals read from strings and integers come back as strings."""
        raw = load_spec({"b": ["1/2", "0.25", "1/4"], "n": [2, 3, "12"]})
        assert raw.b == (Fraction(1, 2), Fraction(1, 4), Fraction(1, 4))
        assert raw.n == (2, 3, 12)
        assert spec_to_wire(raw) == {"b": ["1/2", "1/4", "1/4"], "n": [2, 3, 12]}

    @pytest.mark.parametrize(
        "document",
        [{"b": ["1"]}, {"b": "1", "n": [2]}, {"b": ["1"], "n": ["2.5"]}, ["b", "n"]],
    )
    def test_malformed_documents(self, document: object) -> None:
        """Malformed documents fail with the format clause."""
        with pytest.raises(CNPError) as exc:
            load_spec(document)  # type: ignore[arg-type]
        assert exc.value.violated_clause == "format"


class TestNormalization:
    """Tests for solve_rho and normalize."""

    def test_golden_ratio_rho(self) -> None:
        """2^-rho + 4^-rho = 1 gives rho = log2 of the golden ratio."""
        rho = solve_rho(_raw(["1", "1"], [2, 4]), 1e-30, precision_bits=128)
        with mpmath.workprec(128):
            expected = mpmath.log((mpmath.sqrt(5) + 1) / 2, 2)
            assert abs(rho - expected) < 1e-25

    def test_normalized_weights_sum_to_one(self) -> None:
        """The shifted weights sum to 1."""
        result = normalize(_raw(["1", "1"], [2, 4]), 1e-20)
        assert abs(mpmath.fsum(result.weights) - 1) < 1e-10
        assert result.n == (2, 4)

    def test_small_weights_give_negative_rho(self) -> None:
        """Weights summing below 1 shift to the left."""
        rho = solve_rho(_raw(["1/4", "1/4"], [2, 3]))
        assert rho < 0

    def test_normalized_spec_has_zero_rho(self) -> None:
        """Sum exactly 1 returns rho = 0 without iterating."""
        assert solve_rho(_raw(["1/2", "1/2"], [2, 3])) == 0

    def test_nonpositive_tolerance(self) -> None:
        """Tolerances must be positive."""
        with pytest.raises(CNPError) as exc:
            solve_rho(_raw(["1", "1"], [2, 4]), 0.0)
        assert exc.value.violated_clause == "tolerance"


class TestWeightExpansion:
    """Tests for the kernel weights."""

    def test_weights_of_236(self, spec_236: KernelSpec) -> None:
        """w_6 collects 6 itself and both orders of 2 * 3."""
        w = weight_expansion(spec_236, 12)
        assert w.get(1) == 1
        assert w.get(2) == Fraction(1, 3)
        assert w.get(4) == Fraction(1, 9)
        assert w.get(5) == 0
        assert w.get(6) == Fraction(5, 9)

    def test_weights_nonnegative(self) -> None:
        """Geometric-series expansion has no negative coefficients."""
        spec = make_spec(["1/5", "2/5", "1/5", "1/5"], [2, 3, 5, 7])
        w = weight_expansion(spec, 300)
        assert all(v >= 0 for v in w.coeffs.values())

    def test_frequencies_beyond_limit_ignored(self) -> None:
        """Only frequencies up to the limit contribute."""
        spec = make_spec(["1/2", "1/2"], [2, 100])
        assert weight_expansion(spec, 10).support() == [1, 2, 4, 8]


class TestEvaluation:
    """Tests for the feature map and the kernel."""

    def test_kernel_value(self) -> None:
        """K(1, 1) = 72/59 for b = (1/2, 1/2), n = (2, 3)."""
        spec = make_spec(["1/2", "1/2"], [2, 3])
        value = kernel_eval(spec, 1)
        complement = one_minus_inverse(spec, 1, 1)
        with mpmath.workprec(128):
            assert abs(value - mpmath.mpf(72) / 59) < 1e-25
            assert abs(complement - mpmath.mpf(13) / 72) < 1e-25

    def test_kernel_is_inner_product_of_features(self, spec_236: KernelSpec) -> None:
        """K(s, u) = 1 / (1 - <f(s), f(u)>)."""
        s, u = mpmath.mpc(0.5, 3), mpmath.mpc(2, -1)
        fs, fu = f_eval(spec_236, s), f_eval(spec_236, u)
        value = kernel_eval(spec_236, s, u)
        with mpmath.workprec(128):
            inner = mpmath.fsum(
                a * mpmath.conj(b) for a, b in zip(fs, fu, strict=True)
            )
            assert abs(value - 1 / (1 - inner)) < 1e-25

    def test_features_inside_ball(self, spec_236: KernelSpec) -> None:
        """||f(s)|| < 1 on the half-plane."""
        for s in (mpmath.mpf("0.01"), mpmath.mpc(1, 50)):
            assert mpmath.fsum(abs(z) ** 2 for z in f_eval(spec_236, s)) < 1

    def test_geometric_series_converges(self, spec_236: KernelSpec) -> None:
        """Partial sums approach the closed form."""
        s = mpmath.mpc(3, 1)
        exact = kernel_eval(spec_236, s, s)
        assert abs(kernel_series(spec_236, s, s, 200) - exact) < 1e-20
        assert kernel_series(spec_236, s, s, 0) == 0

    def test_half_plane_violation(self, spec_236: KernelSpec) -> None:
        """Evaluation requires Re(s) > 0."""
        with pytest.raises(CNPError) as exc:
            f_eval(spec_236, mpmath.mpc(0, 1))
        assert exc.value.code is ErrorCode.HALF_PLANE_VIOLATION
        with pytest.raises(CNPError):
            kernel_eval(spec_236, 1, -0.5)


class TestSpecFromWeights:
    """Tests for recovering (b, n) from kernel weights."""

    def test_roundtrip(self, spec_236: KernelSpec) -> None:
        """Weights of a spec give the spec back."""
        raw = spec_from_weights(weight_expansion(spec_236, 50), 50)
        assert raw.n == spec_236.n
        assert raw.b == spec_236.b

    def test_not_normalized(self) -> None:
        """w_1 must be 1."""
        w = DirichletCoefficients(limit=3, coeffs={1: 2, 2: 1})
        with pytest.raises(CNPError) as exc:
            spec_from_weights(w, 3)
        assert exc.value.violated_clause == "normalized"

    def test_not_cnp(self) -> None:
        """Hardy-space weights have a positive inverse coefficient at 6."""
        with pytest.raises(CNPError) as exc:
            spec_from_weights(DirichletCoefficients.ones(10), 10)
        assert exc.value.violated_clause == "cnp"
        assert exc.value.details is not None
        assert exc.value.details["witness"] == 6

    def test_constant_kernel(self) -> None:
        """The unit series has no frequencies."""
        with pytest.raises(CNPError) as exc:
            spec_from_weights(DirichletCoefficients.delta(5), 5)
        assert exc.value.violated_clause == "dimension"
