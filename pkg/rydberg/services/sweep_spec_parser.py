"""Parser for plain-text sweep spec files.

One `key = value` pair per line; `#` starts a comment. Grid keys take comma
separated lists whose items are numbers or inclusive ranges `a..b` with an
optional step `a..b:step` (default step 1):

    # convergence of the p = 3/4 entropy
    n = 20, 50, 100, 200
    l = 0
    p = 0.75
    method = both
    rel_tol = 1e-8

Keys: n, l, m, Z, p (grids); kind (renyi | shannon | tsallis); method
(exact | asympt | both); and the quadrature fields rel_tol, abs_tol,
panel_order, max_depth, max_panels, tail_growth, tail_stop.
"""
from pathlib import Path
from typing import Dict, List, Optional, Union

import numpy as np
from pydantic import ValidationError

from rydberg.exceptions import SpecFileError
from rydberg.schemas.entropy import EntropyKind
from rydberg.schemas.quadrature import QuadratureConfig
from rydberg.schemas.sweep import MethodSelector, SweepSpec

INT_GRIDS = ("n", "l", "m")
FLOAT_GRIDS = ("Z", "p")
CONFIG_FIELDS = tuple(QuadratureConfig.model_fields)
KEYS = INT_GRIDS + FLOAT_GRIDS + ("kind", "method") + CONFIG_FIELDS

# Upper bound on the points a single range item may expand to
MAX_RANGE_POINTS = 100000


def _number(text: str, integer: bool, line: int, field: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise SpecFileError(f"'{text}' is not a number", line=line, field=field)
    if integer:
        if not value.is_integer():
            raise SpecFileError(f"'{text}' is not an integer", line=line, field=field)
        return int(value)
    return value


def _expand_range(item: str, integer: bool, line: int, field: str) -> List[float]:
    bounds, _, step_text = item.partition(":")
    start_text, _, stop_text = bounds.partition("..")
    start = _number(start_text.strip(), integer, line, field)
    stop = _number(stop_text.strip(), integer, line, field)
    step = _number(step_text.strip(), integer, line, field) if step_text.strip() else 1
    if not step > 0:
        raise SpecFileError(f"range step must be positive in '{item}'", line=line, field=field)
    if stop < start:
        raise SpecFileError(f"range '{item}' runs backwards", line=line, field=field)
    count = int(round((stop - start) / step)) + 1
    if count > MAX_RANGE_POINTS:
        raise SpecFileError(f"range '{item}' expands to more than {MAX_RANGE_POINTS} points",
                            line=line, field=field)
    if integer:
        return list(range(start, stop + 1, step))
    values = start + step * np.arange(count)
    values = values[values <= stop + 1e-9 * max(1.0, abs(stop))]
    return [float(round(v, 12)) for v in values]


def parse_grid(text: str, integer: bool, line: int = None, field: str = None) -> List[float]:
    """Expand a comma list of numbers and ranges, keeping the given order."""
    values: List[float] = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            raise SpecFileError("empty list item", line=line, field=field)
        if ".." in item:
            values.extend(_expand_range(item, integer, line, field))
        else:
            values.append(_number(item, integer, line, field))
    return values


def parse_sweep_spec(text: str, cfg: Optional[QuadratureConfig] = None) -> SweepSpec:
    """Parse spec file contents into a SweepSpec.

    Args:
        text: File contents
        cfg: Base quadrature configuration; fields set in the file override it

    Returns:
        Validated SweepSpec

    Raises:
        SpecFileError: With the line number and field of the first problem
    """
    values: Dict[str, object] = {}
    config: Dict[str, str] = {}
    lines: Dict[str, int] = {}

    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if not content:
            continue
        if "=" not in content:
            raise SpecFileError("expected 'key = value'", line=number)
        key, _, value = (part.strip() for part in content.partition("="))
        if key not in KEYS:
            raise SpecFileError(f"unknown key; expected one of {', '.join(KEYS)}", line=number, field=key)
        if key in lines:
            raise SpecFileError(f"duplicate key (first set on line {lines[key]})", line=number, field=key)
        if not value:
            raise SpecFileError("missing value", line=number, field=key)
        lines[key] = number

        if key in INT_GRIDS or key in FLOAT_GRIDS:
            values[key] = parse_grid(value, key in INT_GRIDS, number, key)
        elif key == "kind":
            values[key] = _choice(EntropyKind, value, number, key)
        elif key == "method":
            values[key] = _choice(MethodSelector, value, number, key)
        else:
            config[key] = value

    if "n" not in values:
        raise SpecFileError("the n grid is required", field="n")

    base = (cfg or QuadratureConfig()).model_dump()
    base.update(config)
    try:
        values["cfg"] = QuadratureConfig(**base)
    except ValidationError as e:
        error = e.errors()[0]
        field = str(error["loc"][0]) if error["loc"] else None
        raise SpecFileError(error["msg"], line=lines.get(field), field=field)
    return SweepSpec(**values)


def _choice(enum, value: str, line: int, field: str):
    try:
        return enum(value.lower())
    except ValueError:
        options = ", ".join(member.value for member in enum)
        raise SpecFileError(f"'{value}' is not one of {options}", line=line, field=field)


def load_sweep_spec(path: Union[str, Path], cfg: Optional[QuadratureConfig] = None) -> SweepSpec:
    """Read and parse a spec file.

    Raises:
        SpecFileError: If the file cannot be read or parsed
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise SpecFileError(f"cannot read spec file {path}: {e.strerror}")
    return parse_sweep_spec(text, cfg)
