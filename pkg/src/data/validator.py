"""Validates problem files against the problem schema."""

import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

from src.utils.errors import ProblemValidationError

SCHEMA = "gmt-problem/1"

REQUIRED_FIELDS = (
    "schema", "dimension", "steering", "obstacles", "init", "goal", "n", "lambda", "eta",
    "sampling",
)
OPTIONAL_FIELDS = ("description", "radius_override")
STEERING_KINDS = ("euclidean", "dubins_airplane")


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _reject_unknown(obj: Dict[str, Any], allowed: Iterable[str], path: str) -> None:
    unknown = sorted(set(obj) - set(allowed))
    if unknown:
        where = f"{path}.{unknown[0]}" if path else unknown[0]
        raise ProblemValidationError(where, "unknown field")


def _vector(value: Any, d: int, path: str) -> List[float]:
    if not isinstance(value, list) or len(value) != d or not all(_is_number(v) for v in value):
        raise ProblemValidationError(path, f"expected a list of {d} numbers")
    return [float(v) for v in value]


def _box(value: Any, d: int, path: str) -> Sequence[List[float]]:
    if not isinstance(value, dict):
        raise ProblemValidationError(path, "expected an object with 'lo' and 'hi'")
    _reject_unknown(value, ("lo", "hi"), path)
    for key in ("lo", "hi"):
        if key not in value:
            raise ProblemValidationError(f"{path}.{key}", "missing field")
    lo = _vector(value["lo"], d, f"{path}.lo")
    hi = _vector(value["hi"], d, f"{path}.hi")
    for axis, (a, b) in enumerate(zip(lo, hi)):
        if a > b:
            raise ProblemValidationError(path, f"lo > hi on axis {axis} ({a} > {b})")
    return lo, hi


class ProblemValidator:
    """Validates problem documents (the parsed JSON of a problem file)."""

    def check(self, doc: Any) -> None:
        """Raise ProblemValidationError naming the first offending field.

        Args:
            doc: Parsed problem document
        """
        if not isinstance(doc, dict):
            raise ProblemValidationError("$", "problem document must be a JSON object")
        _reject_unknown(doc, REQUIRED_FIELDS + OPTIONAL_FIELDS, "")
        for key in REQUIRED_FIELDS:
            if key not in doc:
                raise ProblemValidationError(key, "missing field")
        if doc["schema"] != SCHEMA:
            raise ProblemValidationError("schema", f"expected {SCHEMA!r}, got {doc['schema']!r}")
        if "description" in doc and not isinstance(doc["description"], str):
            raise ProblemValidationError("description", "must be a string")

        d = doc["dimension"]
        if not _is_int(d) or d < 2:
            raise ProblemValidationError("dimension", "must be an integer >= 2")

        dubins = self._check_steering(doc["steering"], d)

        if not isinstance(doc["obstacles"], list):
            raise ProblemValidationError("obstacles", "must be a list of boxes")
        boxes = [_box(b, d, f"obstacles[{k}]") for k, b in enumerate(doc["obstacles"])]

        self._check_init(doc["init"], d, dubins, boxes)
        _box(doc["goal"], d, "goal")

        if not _is_int(doc["n"]) or doc["n"] < 1:
            raise ProblemValidationError("n", "must be an integer >= 1")
        lam = doc["lambda"]
        if not _is_number(lam) or not 0.0 < lam <= 1.0:
            raise ProblemValidationError("lambda", "must lie in (0, 1]")
        if not _is_number(doc["eta"]) or doc["eta"] < 0.0:
            raise ProblemValidationError("eta", "must be >= 0")
        override = doc.get("radius_override")
        if override is not None and (not _is_number(override) or override <= 0.0):
            raise ProblemValidationError("radius_override", "must be null or > 0")

        self._check_sampling(doc["sampling"])

    def _check_steering(self, steering: Any, d: int) -> bool:
        if not isinstance(steering, dict) or "kind" not in steering:
            raise ProblemValidationError("steering", "expected an object with a 'kind'")
        kind = steering["kind"]
        if kind not in STEERING_KINDS:
            raise ProblemValidationError("steering.kind", f"must be one of {STEERING_KINDS}")
        if kind == "euclidean":
            _reject_unknown(steering, ("kind",), "steering")
            return False

        _reject_unknown(steering, ("kind", "rho", "discretization_step", "planar_cost"), "steering")
        if d not in (2, 3):
            raise ProblemValidationError("dimension", "Dubins airplane problems need dimension 2 or 3")
        if not _is_number(steering.get("rho")) or steering["rho"] <= 0.0:
            raise ProblemValidationError("steering.rho", "must be a number > 0")
        step = steering.get("discretization_step")
        if step is not None and (not _is_number(step) or step <= 0.0):
            raise ProblemValidationError("steering.discretization_step", "must be > 0")
        if not isinstance(steering.get("planar_cost", False), bool):
            raise ProblemValidationError("steering.planar_cost", "must be true or false")
        return True

    def _check_init(self, init: Any, d: int, dubins: bool, boxes) -> None:
        if not isinstance(init, dict) or "coords" not in init:
            raise ProblemValidationError("init", "expected an object with 'coords'")
        _reject_unknown(init, ("coords", "heading") if dubins else ("coords",), "init")
        coords = _vector(init["coords"], d, "init.coords")
        if dubins and not _is_number(init.get("heading")):
            raise ProblemValidationError("init.heading", "Dubins problems need a numeric heading")
        if not all(0.0 <= c <= 1.0 for c in coords):
            raise ProblemValidationError("init.coords", "must lie in the unit cube")
        for k, (lo, hi) in enumerate(boxes):
            if all(a <= c <= b for a, c, b in zip(lo, coords, hi)):
                raise ProblemValidationError("init", f"initial state lies inside obstacles[{k}]")

    def _check_sampling(self, sampling: Any) -> None:
        if not isinstance(sampling, dict) or sampling.get("kind") not in ("halton", "uniform"):
            raise ProblemValidationError("sampling.kind", "must be 'halton' or 'uniform'")
        if sampling["kind"] == "halton":
            _reject_unknown(sampling, ("kind", "start_index"), "sampling")
            start = sampling.get("start_index", 1)
            if not _is_int(start) or start < 1:
                raise ProblemValidationError("sampling.start_index", "must be an integer >= 1")
        else:
            _reject_unknown(sampling, ("kind", "seed"), "sampling")
            seed = sampling.get("seed", 0)
            if not _is_int(seed) or seed < 0:
                raise ProblemValidationError("sampling.seed", "must be an integer >= 0")

    def validate_document(self, doc: Any) -> tuple[bool, Optional[str]]:
        """Validate a problem document.

        Args:
            doc: Parsed problem document

        Returns:
            Tuple of (is_valid, error_message)
        """
        try:
            self.check(doc)
        except ProblemValidationError as e:
            return False, str(e)
        return True, None

    def validate_file(self, file_path: Path) -> Dict[str, Any]:
        """Validate a problem file.

        Args:
            file_path: Path to the JSON problem file

        Returns:
            Validation report dictionary
        """
        file_path = Path(file_path)
        if not file_path.exists():
            return {"valid": False, "file": str(file_path), "error": f"File not found: {file_path}"}

        try:
            doc = json.loads(file_path.read_text())
        except json.JSONDecodeError as e:
            return {"valid": False, "file": str(file_path), "error": f"Invalid JSON - {e}"}

        is_valid, error = self.validate_document(doc)
        report = {"valid": is_valid, "file": str(file_path), "error": error}
        if is_valid:
            report["obstacles"] = len(doc["obstacles"])
            report["dimension"] = doc["dimension"]
            report["steering"] = doc["steering"]["kind"]
        return report

    def validate_files(self, paths: Sequence[Path]) -> Dict[str, Any]:
        """Validate several problem files and print the combined report."""
        reports = [self.validate_file(p) for p in paths]
        report = {"all_valid": all(r["valid"] for r in reports), "files": reports}
        self.print_validation_report(report)
        return report

    def print_validation_report(self, report: Dict[str, Any]) -> None:
        """Print validation report.

        Args:
            report: Validation report dictionary
        """
        print("\nValidation Report")
        print("=" * 60)

        for file_report in report["files"]:
            status = "✓ VALID" if file_report["valid"] else "✗ INVALID"
            print(f"\n{file_report['file']}: {status}")
            if file_report["valid"]:
                print(f"  Dimension: {file_report['dimension']}")
                print(f"  Steering: {file_report['steering']}")
                print(f"  Obstacles: {file_report['obstacles']}")
            else:
                print(f"  Error: {file_report['error']}")

        print("\n" + "=" * 60)
        if report["all_valid"]:
            print("✓ All problem files are valid!")
        else:
            print("✗ Some problem files have validation errors")
