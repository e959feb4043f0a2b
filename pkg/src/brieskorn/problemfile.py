"""Problem-file ingestion: JSON germ descriptions with caps and bounds.

Schema:
  {
    "name": "barlet35",
    "variables": ["x", "y", "z"],
    "weights": ["1", "1", "-1"],
    "polynomial": "x^5/5 + y^5/5 + x^3*y^3*z/3",
    "options": {"max_degree": 14, "max_t_power": 10, "max_s_power": 10}
  }

Weights are rational strings ("p/q" or integers), never floats.
Quasi-homogeneity is validated on load.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from brieskorn.engine import GermProblem
from brieskorn.poly import ParseError, parse_polynomial


class ProblemFileError(ValueError):
    pass


@dataclass
class ProblemOptions:
    max_degree: int | None = None
    max_t_power: int = 10
    max_s_power: int = 10


@dataclass
class ProblemFile:
    name: str
    problem: GermProblem
    options: ProblemOptions
    digest: str
    raw: dict = field(repr=False, default_factory=dict)


def load_problem_file(path: str) -> ProblemFile:
    try:
        with open(path, "rb") as fh:
            blob = fh.read()
    except OSError as exc:
        raise ProblemFileError(f"cannot read {path}: {exc}") from exc
    digest = hashlib.sha256(blob).hexdigest()
    try:
        data = json.loads(blob)
    except json.JSONDecodeError as exc:
        raise ProblemFileError(f"{path}: malformed JSON: {exc}") from exc
    return parse_problem_payload(data, digest=digest, source=path)


def parse_problem_payload(data: dict, digest: str = "", source: str = "<payload>") -> ProblemFile:
    if not isinstance(data, dict):
        raise ProblemFileError(f"{source}: top level must be an object")
    for key in ("variables", "weights", "polynomial"):
        if key not in data:
            raise ProblemFileError(f"{source}: missing required key {key!r}")
    variables = data["variables"]
    weights = data["weights"]
    if not isinstance(variables, list) or not all(isinstance(v, str) for v in variables):
        raise ProblemFileError(f"{source}: variables must be a list of strings")
    if len(weights) != len(variables):
        raise ProblemFileError(f"{source}: weights length must equal variables length")
    name = data.get("name") or "problem"
    try:
        f = parse_polynomial(data["polynomial"], variables)
    except ParseError as exc:
        raise ProblemFileError(f"{source}: polynomial does not parse: {exc}") from exc
    try:
        problem = GermProblem(variables, weights, f, name=name)
    except (ValueError, ZeroDivisionError) as exc:
        raise ProblemFileError(f"{source}: {exc}") from exc
    opts = data.get("options", {})
    if not isinstance(opts, dict):
        raise ProblemFileError(f"{source}: options must be an object")
    options = ProblemOptions(
        max_degree=opts.get("max_degree"),
        max_t_power=int(opts.get("max_t_power", 10)),
        max_s_power=int(opts.get("max_s_power", 10)),
    )
    return ProblemFile(name=name, problem=problem, options=options, digest=digest, raw=data)
