"""The bundled regression corpus: .hsl scripts with golden JSON expectations beside them.

A golden file holds {"tags": [...], "results": [...]}; each expected result is a
partial document compared structurally against the actual one (keys absent from the
golden are ignored, lists must match element by element).
"""

import json
import random
from dataclasses import dataclass, field
from pathlib import Path

from .errors import HypertorError
from .poly import ParseError
from .runner import Session

CORPUS_DIR = Path(__file__).parent / "corpus_data"


@dataclass
class CorpusCase:
    name: str
    script: Path
    golden: dict

    @property
    def tags(self):
        return list(self.golden.get("tags", []))


@dataclass
class CaseResult:
    name: str
    passed: bool
    diffs: list = field(default_factory=list)


@dataclass
class CorpusSummary:
    results: list

    @property
    def passed(self):
        return sum(r.passed for r in self.results)

    @property
    def failed(self):
        return len(self.results) - self.passed

    @property
    def ok(self):
        return self.failed == 0

    def to_dict(self):
        return {
            "passed": self.passed,
            "failed": self.failed,
            "cases": [{"name": r.name, "passed": r.passed, "diffs": r.diffs} for r in self.results],
        }


def load_cases(directory=None, tag=None):
    directory = Path(directory) if directory else CORPUS_DIR
    cases = []
    for script in sorted(directory.glob("*.hsl")):
        golden_path = script.with_suffix(".json")
        golden = json.loads(golden_path.read_text()) if golden_path.exists() else {}
        case = CorpusCase(script.stem, script, golden)
        if tag is None or tag in case.tags:
            cases.append(case)
    return cases


def structural_diff(expected, actual, path="$"):
    """Differences between a partial expected document and an actual one."""
    if isinstance(expected, dict):
        if not isinstance(actual, dict):
            return [f"{path}: expected an object, got {json.dumps(actual)}"]
        out = []
        for k, v in expected.items():
            if k not in actual:
                out.append(f"{path}.{k}: missing")
            else:
                out.extend(structural_diff(v, actual[k], f"{path}.{k}"))
        return out
    if isinstance(expected, list):
        if not isinstance(actual, list) or len(actual) != len(expected):
            return [f"{path}: expected {json.dumps(expected)}, got {json.dumps(actual)}"]
        out = []
        for i, (e, a) in enumerate(zip(expected, actual)):
            out.extend(structural_diff(e, a, f"{path}[{i}]"))
        return out
    if expected != actual or type(expected) is not type(actual):
        return [f"{path}: expected {json.dumps(expected)}, got {json.dumps(actual)}"]
    return []


def run_case(case, **session_kwargs):
    session = Session(**session_kwargs)
    try:
        docs = session.run_text(case.script.read_text(encoding="utf-8"), record_errors=True)
    except (ParseError, HypertorError) as err:  # reported as a case failure
        return CaseResult(case.name, False, [f"{type(err).__name__}: {err}"])
    actual = [d.to_dict() for d in docs]
    expected = case.golden.get("results", [])
    diffs = structural_diff(expected, actual)
    return CaseResult(case.name, not diffs, diffs)


def corpus_run(tag=None, directory=None, seed=None, **session_kwargs):
    """Run every case (optionally filtered by tag); the summary is sorted by case name,
    so it does not depend on execution order (which a seed shuffles)."""
    cases = load_cases(directory, tag)
    if seed is not None:
        random.Random(seed).shuffle(cases)
    results = [run_case(c, **session_kwargs) for c in cases]
    results.sort(key=lambda r: r.name)
    return CorpusSummary(results)
