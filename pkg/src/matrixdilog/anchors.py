"""Cross-reference table from each public operation to its implementation and test.

The table lives in ``data/anchors.json`` and is checked for completeness
against ``REQUIRED_OPS``; a missing or dangling entry is an error.
"""
from __future__ import annotations

import importlib
import json
import re
from dataclasses import asdict, dataclass
from importlib import resources
from pathlib import Path

REQUIRED_OPS = (
    "std_log", "euler_li2", "rogers_L", "bloch_wigner_D2", "lifted_R", "nth_root_branch",
    "g_function", "omega", "s_curve_sum",
    "complete_triple", "log_branch", "apply_permutation", "b_sign",
    "R1", "LN_basic", "LN_lifted", "RN", "RN_inverse", "sym_matrices", "check_symmetry",
    "phase_equal", "splitting_check",
    "build", "check_global_branching", "check_edge_compatibility", "check_global_flattening",
    "check_global_charge", "mod2_class_on_path", "idealize",
    "transit_2_3", "transit_3_2", "transit_0_2", "transit_bubble", "verify_five_term",
    "verify_two_term",
    "contract", "H1", "HN", "asymptotics_probe",
    "cmd_check", "cmd_invariant", "cmd_suite",
    "generate_anchor_index",
)


class AnchorError(ValueError):
    pass


@dataclass(frozen=True)
class AnchorEntry:
    op: str
    module: str
    implementation: str  # dotted path to a function, class or method
    label: str
    test: str  # pytest node id relative to the repository root


def load_entries(path=None) -> list:
    if path is None:
        text = (resources.files("matrixdilog") / "data" / "anchors.json").read_text()
    else:
        text = Path(path).read_text()
    return [AnchorEntry(**row) for row in json.loads(text)]


def dump_entries(entries) -> str:
    return json.dumps([asdict(e) for e in entries], indent=1)


def resolve(dotted: str):
    """Import the longest module prefix of ``dotted`` and walk the attributes."""
    parts = dotted.split(".")
    for k in range(len(parts), 0, -1):
        try:
            obj = importlib.import_module(".".join(parts[:k]))
        except ImportError:
            continue
        for attr in parts[k:]:
            obj = getattr(obj, attr)
        return obj
    raise ImportError(dotted)


def _test_exists(root: Path, node: str) -> bool:
    fname, _, name = node.partition("::")
    p = root / fname
    return p.is_file() and re.search(rf"^def {re.escape(name)}\b", p.read_text(), re.M) is not None


def validate(entries, required=REQUIRED_OPS, root=None) -> None:
    """Raise AnchorError unless every required op has exactly one resolvable entry.

    With ``root`` (the repository checkout) the test ids are checked as well.
    """
    ops = [e.op for e in entries]
    missing = sorted(set(required) - set(ops))
    if missing:
        raise AnchorError(f"no anchor for: {', '.join(missing)}")
    dup = sorted({o for o in ops if ops.count(o) > 1})
    if dup:
        raise AnchorError(f"duplicate anchors: {', '.join(dup)}")
    extra = sorted(set(ops) - set(required))
    if extra:
        raise AnchorError(f"unknown ops: {', '.join(extra)}")
    for e in entries:
        try:
            obj = resolve(e.implementation)
        except (ImportError, AttributeError):
            raise AnchorError(f"{e.op}: {e.implementation} does not resolve") from None
        if not callable(obj):
            raise AnchorError(f"{e.op}: {e.implementation} is not callable")
        if root is not None and not _test_exists(Path(root), e.test):
            raise AnchorError(f"{e.op}: test {e.test} not found")


def to_markdown(entries) -> str:
    lines = ["| operation | module | implementation | description | test |",
             "|---|---|---|---|---|"]
    lines += [f"| `{e.op}` | {e.module} | `{e.implementation}` | {e.label} | `{e.test}` |" for e in entries]
    return "\n".join(lines) + "\n"


def generate_anchor_index(entries=None, root=None) -> str:
    """Validated markdown cross-reference table."""
    entries = load_entries() if entries is None else list(entries)
    validate(entries, root=root)
    return to_markdown(entries)
