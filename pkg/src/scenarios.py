"""
Scenario files: a chart, a splitting, an optional second splitting and an
optional presymplectic form, written as KEY=value lines

    NAME=s1
    LEAF=x
    TRANSVERSE=u1,u2
    V.u2.x=u1
    ALT_SPLITTING=flat
    OMEGA=du1 ^ du2
    SEED=7
"""
import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import io
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Optional

from dotenv.parser import parse_stream

from config.settings import PATH_CONFIG, run_defaults
from src.forms import Chart, Splitting
from src.expressions import ExpressionSyntaxError, UnknownCoordinateError, parse_expression, parse_form
from src.foliation import FoliationStructure

KNOWN_KEYS = ("NAME", "LEAF", "TRANSVERSE", "ALT_SPLITTING", "OMEGA", "SEED", "CASES", "MAX_ARITY")


class ScenarioError(ValueError):
    """Scenario file is malformed or refers to something that does not exist."""

    def __init__(self, message, field=None, line=None):
        where = []
        if field:
            where.append(f"field {field}")
        if line:
            where.append(f"line {line}")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(f"{message}{suffix}")
        self.field = field
        self.line = line


@dataclass
class Scenario:
    name: str
    chart: Chart
    splitting: Splitting
    alt_splitting: Optional[Splitting] = None
    omega: Optional[str] = None
    seed: int = 0
    cases: int = 25
    max_arity: int = 5
    path: Optional[str] = field(default=None, compare=False)

    @cached_property
    def foliation(self):
        return FoliationStructure(self.splitting)

    @cached_property
    def alt_foliation(self):
        if self.alt_splitting is None:
            raise ScenarioError("Scenario has no alternative splitting", field="ALT_SPLITTING")
        return FoliationStructure(self.alt_splitting)

    def omega_form(self):
        if self.omega is None:
            raise ScenarioError("Scenario has no presymplectic form", field="OMEGA")
        return parse_form(self.omega, self.splitting)

    def with_overrides(self, seed=None, cases=None, max_arity=None):
        """Copy with CLI overrides applied; None keeps the scenario value."""
        return Scenario(
            name=self.name, chart=self.chart, splitting=self.splitting,
            alt_splitting=self.alt_splitting, omega=self.omega,
            seed=self.seed if seed is None else seed,
            cases=self.cases if cases is None else cases,
            max_arity=self.max_arity if max_arity is None else max_arity,
            path=self.path,
        )


def _read_bindings(text):
    entries = {}
    for binding in parse_stream(io.StringIO(text)):
        line = binding.original.line
        if binding.error:
            raise ScenarioError(f"Cannot parse '{binding.original.string.strip()}'", line=line)
        if binding.key is None:
            continue
        if binding.key in entries:
            raise ScenarioError("Duplicate key", field=binding.key, line=line)
        entries[binding.key] = ((binding.value or "").strip(), line)
    return entries


def _names(entries, key, required=True):
    if key not in entries:
        if required:
            raise ScenarioError("Missing required key", field=key)
        return (), None
    value, line = entries[key]
    names = tuple(part.strip() for part in value.split(",") if part.strip())
    return names, line


def _integer(entries, key, default, minimum):
    if key not in entries:
        return default
    value, line = entries[key]
    try:
        number = int(value)
    except ValueError:
        raise ScenarioError(f"Expected an integer, got '{value}'", field=key, line=line) from None
    if number < minimum:
        raise ScenarioError(f"Expected an integer >= {minimum}, got {number}", field=key, line=line)
    return number


def _v_table(entries, chart, prefix):
    """Collect prefix.<u>.<x> = expression entries into a Splitting coefficient table."""
    table = {}
    for key, (value, line) in entries.items():
        if not key.startswith(prefix):
            continue
        parts = key[len(prefix):].split(".")
        if len(parts) != 2:
            raise ScenarioError(f"Expected {prefix}<transverse>.<leaf>", field=key, line=line)
        alpha, i = parts
        if alpha not in chart.transverse:
            raise ScenarioError(f"Unknown transverse coordinate '{alpha}'", field=key, line=line)
        if i not in chart.leaf:
            raise ScenarioError(f"Unknown leaf coordinate '{i}'", field=key, line=line)
        try:
            table[(alpha, i)] = parse_expression(value, chart.coords)
        except (ExpressionSyntaxError, UnknownCoordinateError) as e:
            raise ScenarioError(str(e), field=key, line=line) from None
    return table


def parse_scenario(text, name="scenario", path=None):
    """Build a validated Scenario from file contents."""
    entries = _read_bindings(text)
    defaults = run_defaults()

    leaf, leaf_line = _names(entries, "LEAF")
    transverse, _ = _names(entries, "TRANSVERSE")
    if not leaf:
        raise ScenarioError("At least one leaf coordinate is required", field="LEAF", line=leaf_line)
    try:
        chart = Chart(leaf, transverse)
    except ValueError as e:
        raise ScenarioError(str(e), field="LEAF") from None

    for key, (_, line) in entries.items():
        if key not in KNOWN_KEYS and not key.startswith(("V.", "ALT.V.")):
            raise ScenarioError("Unknown key", field=key, line=line)

    scenario_name = entries["NAME"][0] if "NAME" in entries else name
    splitting = Splitting(chart, _v_table(entries, chart, "V."), name=scenario_name)

    alt_splitting = None
    alt_table = _v_table(entries, chart, "ALT.V.")
    if "ALT_SPLITTING" in entries:
        value, line = entries["ALT_SPLITTING"]
        if value != "flat":
            raise ScenarioError(f"ALT_SPLITTING must be 'flat', got '{value}'", field="ALT_SPLITTING", line=line)
        if alt_table:
            raise ScenarioError("Use either ALT_SPLITTING=flat or ALT.V.* entries", field="ALT_SPLITTING", line=line)
        alt_splitting = Splitting.flat(chart)
    elif alt_table:
        alt_splitting = Splitting(chart, alt_table, name=f"{scenario_name}-alt")

    omega = None
    if "OMEGA" in entries:
        omega, line = entries["OMEGA"]
        try:
            parse_form(omega, splitting)
        except (ExpressionSyntaxError, UnknownCoordinateError) as e:
            raise ScenarioError(str(e), field="OMEGA", line=line) from None

    return Scenario(
        name=scenario_name,
        chart=chart,
        splitting=splitting,
        alt_splitting=alt_splitting,
        omega=omega,
        seed=_integer(entries, "SEED", defaults["seed"], 0),
        cases=_integer(entries, "CASES", defaults["cases"], 1),
        max_arity=_integer(entries, "MAX_ARITY", defaults["max_arity"], 1),
        path=path,
    )


def resolve_path(path):
    """Bare names are looked up in the scenario directory."""
    candidate = Path(path)
    if candidate.exists():
        return candidate
    for option in (Path(PATH_CONFIG['scenarios']) / path, Path(PATH_CONFIG['scenarios']) / f"{path}.env"):
        if option.exists():
            return option
    raise ScenarioError(f"Scenario file not found: {path}")


def load_scenario(path):
    """Read and validate a scenario file."""
    resolved = resolve_path(path)
    text = resolved.read_text(encoding="utf-8")
    return parse_scenario(text, name=resolved.stem, path=str(resolved))
