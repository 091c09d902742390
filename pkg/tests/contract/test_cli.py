"""Contract tests for the command-line surface."""

import io
import json
from collections.abc import Callable
from pathlib import Path
from typing import Any

import mpmath
import pytest

from cnpd.cli.registry import get_registry
from cnpd.main import run
from cnpd.services.kernelspec import f_eval
from tests.conftest import make_spec

RunCLI = Callable[..., tuple[int, Any]]


@pytest.fixture
def cli(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> RunCLI:
    """Run the CLI in an empty directory and parse its JSON output."""
    monkeypatch.chdir(tmp_path)

    def invoke(*argv: str) -> tuple[int, Any]:
        out = io.StringIO()
        code = run(list(argv), stdout=out)
        text = out.getvalue()
        return code, json.loads(text) if text else None

    return invoke


@pytest.fixture
def spec_file(write_json: Callable[[str, Any], str]) -> Callable[..., str]:
    """Write {"b": b, "n": n} and return its path."""

    def write(b: list[Any], n: list[int], name: str = "spec.json") -> str:
        return write_json(name, {"b": b, "n": n})

    return write


class TestRegistry:
    """Tests for the registered commands."""

    def test_all_commands_registered(self) -> None:
        """Every subcommand is available under its name."""
        assert get_registry().names() == [
            "validate",
            "rho",
            "normalize",
            "weights",
            "cnp-check",
            "circuits",
            "variety",
            "member",
            "invert-point",
            "eval",
            "similar",
            "classify",
            "gram",
            "dm",
            "zeta-factor",
            "generating",
            "affine-rank",
            "zeta-quotient",
            "from-weights",
            "norm",
        ]


class TestSpecCommands:
    """Tests for validate, rho, normalize, weights and eval."""

    def test_validate(self, cli: RunCLI, spec_file: Callable[..., str]) -> None:
        """A valid spec echoes its exact data."""
        code, doc = cli("validate", spec_file(["1/2", "1/3", "1/6"], [2, 3, 5]))
        assert code == 0
        assert doc == {
            "valid": True,
            "d": 3,
            "weight_sum": "1",
            "b": ["1/2", "1/3", "1/6"],
            "n": [2, 3, 5],
        }

    def test_weights_sum_error(
        self, cli: RunCLI, spec_file: Callable[..., str]
    ) -> None:
        """A wrong sum exits 2 and names the clause."""
        code, doc = cli("validate", spec_file(["1/2", "1/3"], [2, 3]))
        assert code == 2
        assert doc["error"]["code"] == "WEIGHTS_SUM"
        assert doc["error"]["violated_clause"] == "weights_sum"
        assert doc["error"]["details"]["deficit"] == "1/6"

    def test_duplicate_frequency(
        self, cli: RunCLI, spec_file: Callable[..., str]
    ) -> None:
        """Repeated frequencies exit 2."""
        code, doc = cli("validate", spec_file(["1/2", "1/2"], [3, 3]))
        assert code == 2
        assert doc["error"]["code"] == "DUPLICATE_FREQUENCY"

    @pytest.mark.parametrize("bad", [float("inf"), float("nan")])
    def test_non_finite_weight(
        self, cli: RunCLI, spec_file: Callable[..., str], bad: float
    ) -> None:
        """Infinity and NaN in the JSON input are format errors, not crashes."""
        code, doc = cli("validate", spec_file([bad, "1/2"], [2, 3]))
        assert code == 2
        assert doc["error"]["code"] == "VALIDATION_ERROR"
        assert doc["error"]["violated_clause"] == "format"

    def test_non_finite_frequency(
        self, cli: RunCLI, spec_file: Callable[..., str]
    ) -> None:
        """A non-finite frequency is rejected the same way."""
        code, doc = cli("circuits", spec_file(["1/2", "1/2"], [2, float("inf")]))
        assert code == 2
        assert doc["error"]["violated_clause"] == "format"

    def test_rho_golden_ratio(self, cli: RunCLI, spec_file: Callable[..., str]) -> None:
        """2^-rho + 4^-rho = 1 at rho = log2 of the golden ratio."""
        code, doc = cli("rho", spec_file([1, 1], [2, 4]))
        assert code == 0
        assert doc["rho"].startswith("0.69424191363061")

    def test_normalize(self, cli: RunCLI, spec_file: Callable[..., str]) -> None:
        """Normalized weights sum to one."""
        code, doc = cli("normalize", spec_file([1, 1], [2, 4]))
        assert code == 0
        assert doc["n"] == [2, 4]
        assert abs(float(doc["weight_sum"]) - 1.0) < 1e-15

    def test_weights(self, cli: RunCLI, spec_file: Callable[..., str]) -> None:
        """Kernel weights of b = (1/2, 1/2), n = (2, 3)."""
        code, doc = cli("weights", spec_file(["1/2", "1/2"], [2, 3]), "--limit", "6")
        assert code == 0
        assert doc == {
            "limit": 6,
            "coeffs": {"1": "1", "2": "1/2", "3": "1/2", "4": "1/4", "6": "1/2"},
        }

    def test_eval(self, cli: RunCLI, spec_file: Callable[..., str]) -> None:
        """K(1, 1) = 72/59 for b = (1/2, 1/2), n = (2, 3)."""
        code, doc = cli("eval", spec_file(["1/2", "1/2"], [2, 3]), "--s", "1")
        assert code == 0
        assert doc["kernel"]["re"].startswith("1.22033898305084745762711864")
        assert float(doc["kernel"]["im"]) == 0.0
        assert len(doc["f_s"]) == 2

    def test_eval_left_half_plane(
        self, cli: RunCLI, spec_file: Callable[..., str]
    ) -> None:
        """Re(s) <= 0 exits 3."""
        code, doc = cli("eval", spec_file(["1/2", "1/2"], [2, 3]), "--s=-1+i")
        assert code == 3
        assert doc["error"]["code"] == "HALF_PLANE_VIOLATION"

    def test_from_weights(
        self, cli: RunCLI, write_json: Callable[[str, Any], str]
    ) -> None:
        """Kernel weights give back (b, n)."""
        path = write_json(
            "w.json", {"coeffs": {"1": 1, "2": "1/2", "3": "1/2", "4": "1/4"}}
        )
        code, doc = cli("from-weights", path, "--limit", "4")
        assert code == 0
        assert doc == {"d": 2, "weight_sum": "1", "b": ["1/2", "1/2"], "n": [2, 3]}


class TestSeriesCommands:
    """Tests for cnp-check, dm, zeta-factor, zeta-quotient and norm."""

    def test_cnp_check_zeta(
        self, cli: RunCLI, write_json: Callable[[str, Any], str]
    ) -> None:
        """The zeta weights fail at 6 and invert to the Moebius function."""
        code, doc = cli(
            "cnp-check", write_json("ones.json", {"values": [1] * 10}), "--limit", "10"
        )
        assert code == 0
        assert doc["is_cnp_up_to_n"] is False
        assert doc["witness"] == 6
        assert doc["witness_mobius"] == 1
        assert doc["inverse"]["coeffs"] == {
            "1": "1",
            "2": "-1",
            "3": "-1",
            "5": "-1",
            "6": "1",
            "7": "-1",
            "10": "1",
        }

    def test_cnp_check_passing_weights(
        self, cli: RunCLI, write_json: Callable[[str, Any], str]
    ) -> None:
        """Weights of 1/(1 - 2^-s / 2) pass and report no witness."""
        weights = {"coeffs": {"1": "1", "2": "1/2", "4": "1/4", "8": "1/8"}}
        code, doc = cli(
            "cnp-check", write_json("geometric.json", weights), "--limit", "8"
        )
        assert code == 0
        assert doc["is_cnp_up_to_n"] is True
        assert doc["witness"] is None
        assert doc["witness_mobius"] is None
        assert doc["inverse"]["coeffs"] == {"1": "1", "2": "-1/2"}

    def test_dm(self, cli: RunCLI) -> None:
        """d_3(12) = 18."""
        code, doc = cli("dm", "--m", "3", "--n", "12")
        assert code == 0
        assert doc == {"m": 3, "n": 12, "value": 18}

    def test_dm_domain(self, cli: RunCLI) -> None:
        """m = 0 exits 3."""
        code, doc = cli("dm", "--m", "0", "--n", "12")
        assert code == 3
        assert doc["error"]["code"] == "DOMAIN_ERROR"

    def test_zeta_factor(self, cli: RunCLI, spec_file: Callable[..., str]) -> None:
        """Weight 1/2 on frequency 2 already fails at n = 2."""
        code, doc = cli(
            "zeta-factor", spec_file(["1/2", "1/2"], [2, 3]), "--limit", "6"
        )
        assert code == 0
        assert doc["holds_up_to_n"] is False
        assert doc["witness"] == 2
        assert doc["witness_sum"] == "1/2"

    def test_zeta_quotient(self, cli: RunCLI, spec_file: Callable[..., str]) -> None:
        """c_n = -1 + sum of the weights on divisors of n."""
        code, doc = cli(
            "zeta-quotient", spec_file(["1/2", "1/2"], [2, 3]), "--limit", "4"
        )
        assert code == 0
        assert doc["coeffs"] == {"2": "-1/2", "3": "-1/2", "4": "-1/2"}
        assert doc["nonnegative"] is False

    def test_norm(self, cli: RunCLI, write_json: Callable[[str, Any], str]) -> None:
        """sum |a_n|^2 / w_n over the support."""
        series = write_json("f.json", {"coeffs": {"1": 1, "2": 2}})
        weights = write_json("w.json", {"coeffs": {"1": 1, "2": "1/2"}})
        code, doc = cli("norm", series, weights)
        assert code == 0
        assert doc == {"value": "9", "infinite": False}


class TestVarietyCommands:
    """Tests for circuits, variety, member, invert-point and affine-rank."""

    def test_circuits(self, cli: RunCLI, spec_file: Callable[..., str]) -> None:
        """(6, 10, 21, 35, 360) has four circuits."""
        code, doc = cli(
            "circuits", spec_file([1, 1, 1, 1, 1], [6, 10, 21, 35, 360])
        )
        assert code == 0
        assert doc["d"] == 5
        assert [c["J"] for c in doc["circuits"]] == [
            [1, 2, 5],
            [1, 2, 3, 4],
            [1, 3, 4, 5],
            [2, 3, 4, 5],
        ]
        assert doc["log_independent"] is False
        assert doc["chain_case"] is False

    def test_variety(self, cli: RunCLI, spec_file: Callable[..., str]) -> None:
        """One relation for 2 * 3 = 6."""
        code, doc = cli("variety", spec_file(["1/3", "1/3", "1/3"], [2, 3, 6]))
        assert code == 0
        assert doc["is_full_ball"] is False
        assert doc["relations"] == [
            {
                "circuit": {"J": [1, 2, 3], "J1": [1, 2], "J2": [3], "beta": [1, 1, 1]},
                "asq": "1/9",
                "bsq": "1/3",
            }
        ]

    @pytest.mark.parametrize(
        ("b", "n", "point", "expected"),
        [
            (["4/9", "4/9", "1/9"], [2, 3, 6], "1/2,1/2,3/16", True),
            (["1/2", "1/2"], [2, 4], "1/2,1/2", False),
        ],
    )
    def test_member_exact(
        self,
        cli: RunCLI,
        spec_file: Callable[..., str],
        b: list[str],
        n: list[int],
        point: str,
        expected: bool,
    ) -> None:
        """Exact membership of Gaussian-rational points."""
        code, doc = cli("member", spec_file(b, n), "--point", point, "--exact")
        assert code == 0
        assert doc == {"member": expected, "mode": "exact"}

    def test_member_dimension_mismatch(
        self, cli: RunCLI, spec_file: Callable[..., str]
    ) -> None:
        """A point of the wrong length exits 3."""
        code, doc = cli(
            "member", spec_file(["1/2", "1/2"], [2, 4]), "--point", "0,0,0"
        )
        assert code == 3
        assert doc["error"]["code"] == "DIMENSION_MISMATCH"

    def test_invert_point(self, cli: RunCLI, spec_file: Callable[..., str]) -> None:
        """f(1) for square-root-free weights inverts to s = 1."""
        code, doc = cli(
            "invert-point",
            spec_file(["4/9", "4/9", "1/9"], [2, 3, 6]),
            "--point",
            "1/3,2/9,1/18",
        )
        assert code == 0
        assert doc["found"] is True
        assert abs(float(doc["s"]["re"]) - 1.0) < 1e-12
        assert abs(float(doc["s"]["im"])) < 1e-12

    def test_invert_point_branches(
        self, cli: RunCLI, spec_file: Callable[..., str]
    ) -> None:
        """--branches widens the scan to reach f(1 + 400i) over n_1 = 2."""

        def text(x: mpmath.mpf) -> str:
            return mpmath.nstr(x, 45, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)

        spec = make_spec(["1/2", "1/2"], [2, 3])
        point = ",".join(
            f"{text(v.real)}{'+' if v.imag >= 0 else ''}{text(v.imag)}i"
            for v in f_eval(spec, mpmath.mpc(1, 400))
        )
        path = spec_file(["1/2", "1/2"], [2, 3])
        code, doc = cli("invert-point", path, "--point", point)
        assert code == 0
        assert doc["found"] is False
        code, doc = cli("invert-point", path, "--point", point, "--branches", "44")
        assert code == 0
        assert doc["found"] is True
        assert abs(float(doc["s"]["im"]) - 400.0) < 1e-9

    def test_affine_rank(self, cli: RunCLI, spec_file: Callable[..., str]) -> None:
        """The feature map spans all d coordinates."""
        code, doc = cli(
            "affine-rank",
            spec_file(["1/3", "1/3", "1/3"], [2, 3, 6]),
            "--samples",
            "6",
        )
        assert code == 0
        assert doc["rank"] == 3
        assert len(doc["singular_values"]) == 3


class TestClassifyCommands:
    """Tests for similar, classify and generating."""

    def test_similar(self, cli: RunCLI, spec_file: Callable[..., str]) -> None:
        """(2, 3, 6) with equal weights matches (5, 7, 35)."""
        a = spec_file(["1/3", "1/3", "1/3"], [2, 3, 6], "a.json")
        b = spec_file(["1/2", "1/5", "3/10"], [5, 7, 35], "b.json")
        code, doc = cli("similar", a, b)
        assert code == 0
        assert doc["similar"] is True
        assert doc["reason"] is None

    def test_classify_generating_pair(
        self, cli: RunCLI, spec_file: Callable[..., str]
    ) -> None:
        """12 = 2^2 * 3 against 18 = 2 * 3^2."""
        a = spec_file(["1/2", "1/4", "1/4"], [2, 3, 12], "a.json")
        b = spec_file(["1/4", "1/2", "1/4"], [2, 3, 18], "b.json")
        code, doc = cli("classify", a, b)
        assert code == 0
        assert doc["verdict"] == "IsometricallyIsomorphic"
        assert doc["theorem"] == "ThmC"
        assert doc["certificate"]["permutation"] == [2, 1, 3]
        assert doc["isomorphic"] is True
        assert doc["not_isomorphic_to_free_algebra"] is True

    def test_classify_not_isomorphic(
        self, cli: RunCLI, spec_file: Callable[..., str]
    ) -> None:
        """Equal weights on 18 = 2 * 3^2 break the weight identity."""
        a = spec_file(["1/2", "1/4", "1/4"], [2, 3, 12], "a.json")
        b = spec_file(["1/3", "1/3", "1/3"], [2, 3, 18], "b.json")
        code, doc = cli("classify", a, b)
        assert code == 0
        assert doc["verdict"] == "NotIsomorphic"
        assert doc["isomorphic"] is False

    def test_generating(self, cli: RunCLI, spec_file: Callable[..., str]) -> None:
        """30 = 2 * 3 * 5."""
        code, doc = cli("generating", spec_file(["1/4"] * 4, [2, 3, 5, 30]))
        assert code == 0
        assert doc["in_class"] is True
        assert doc["form"]["dependent_index"] == 4


class TestGramCommand:
    """Tests for gram."""

    def test_psd(
        self,
        cli: RunCLI,
        spec_file: Callable[..., str],
        write_json: Callable[[str, Any], str],
    ) -> None:
        """Kernel Gram matrices are PSD."""
        points = write_json("points.json", {"points": ["1", "1/2+3i", "2-i"]})
        code, doc = cli("gram", spec_file(["1/2", "1/2"], [2, 3]), "--points", points)
        assert code == 0
        assert doc["size"] == 3
        assert doc["mode"] == "kernel"
        assert doc["is_psd"] is True
        assert len(doc["matrix"]) == 3
        assert float(doc["hermitian_defect"]) < 1e-30

    def test_duplicate_points(
        self,
        cli: RunCLI,
        spec_file: Callable[..., str],
        write_json: Callable[[str, Any], str],
    ) -> None:
        """Coinciding points exit 3."""
        points = write_json("points.json", ["1", "2", "1"])
        code, doc = cli(
            "gram",
            spec_file(["1/2", "1/2"], [2, 3]),
            "--points",
            points,
            "--mode",
            "one_minus_inv",
        )
        assert code == 3
        assert doc["error"]["code"] == "DUPLICATE_POINTS"


class TestExitCodes:
    """Tests for usage errors, configuration and determinism."""

    def test_unknown_command(self, cli: RunCLI) -> None:
        """Unknown subcommands are usage errors."""
        code, doc = cli("frobnicate")
        assert code == 64
        assert doc is None

    def test_missing_argument(self, cli: RunCLI) -> None:
        """Missing required options are usage errors."""
        code, _ = cli("dm", "--m", "2")
        assert code == 64

    def test_missing_input_file(self, cli: RunCLI) -> None:
        """An unreadable input is a validation error."""
        code, doc = cli("validate", "absent.json")
        assert code == 2
        assert doc["error"]["violated_clause"] == "input"

    def test_missing_config(self, cli: RunCLI) -> None:
        """An explicitly named missing config file is a usage error."""
        code, doc = cli("--config", "absent.yaml", "dm", "--m", "2", "--n", "4")
        assert code == 64
        assert doc["error"]["code"] == "USAGE_ERROR"

    def test_invalid_config(self, cli: RunCLI, tmp_path: Path) -> None:
        """An out-of-range config value is a validation error."""
        path = tmp_path / "bad.yaml"
        path.write_text("precision:\n  bits: 8\n", encoding="utf-8")
        code, doc = cli("--config", str(path), "dm", "--m", "2", "--n", "4")
        assert code == 2
        assert doc["error"]["violated_clause"] == "configuration"

    def test_internal_error(
        self, cli: RunCLI, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        """Unexpected exceptions exit 1 without leaking details."""
        command = get_registry().get_or_raise("dm")

        def boom(args: Any) -> dict[str, Any]:
            raise RuntimeError("boom")

        monkeypatch.setattr(command, "execute", boom)
        code, doc = cli("dm", "--m", "2", "--n", "4")
        assert code == 1
        assert doc["error"]["code"] == "INTERNAL_ERROR"
        assert doc["error"]["details"] == {"error_type": "RuntimeError"}

    def test_deterministic_output(
        self,
        tmp_path: Path,
        spec_file: Callable[..., str],
        monkeypatch: pytest.MonkeyPatch,
    ) -> None:
        """Identical invocations print identical bytes."""
        monkeypatch.chdir(tmp_path)
        path = spec_file(["1/2", "1/2"], [2, 3])
        outputs = []
        for _ in range(2):
            out = io.StringIO()
            assert run(["eval", path, "--s", "1+i", "--u", "2"], stdout=out) == 0
            outputs.append(out.getvalue())
        assert outputs[0] == outputs[1]

    def test_logs_go_to_stderr(
        self, cli: RunCLI, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """Command logs never mix with the result document."""
        code, doc = cli("--log-level", "info", "dm", "--m", "2", "--n", "4")
        assert code == 0
        assert doc == {"m": 2, "n": 4, "value": 3}
        captured = capsys.readouterr()
        assert "command.completed" in captured.err
        assert captured.out == ""
