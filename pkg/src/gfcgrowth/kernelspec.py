"""Plain-text kernel descriptions.

Grammar (one ``key = value`` pair per line, or several separated by ``;``;
``#`` starts a comment; keys are case-sensitive; reals use Python float
syntax, decimal or scientific)::

    kind            power_law | mixture | distributed_order | measure | logarithmic
    alpha           real in (0, 1)                         (power_law)
    weights         comma-separated positive reals         (mixture)
    exponents       comma-separated reals in (0, 1)        (mixture, same length)
    mu_nodes        comma-separated values of mu at equispaced points of [0, 1]
                    (distributed_order; optional, default 1)
    measure_atoms   comma-separated loc:mass pairs         (measure)
    measure_density comma-separated loc:weight quadrature nodes (measure, optional)

Example::

    kind = mixture
    weights = 1, 1
    exponents = 0.5, 0.3333333333333333
"""
from __future__ import annotations

import os
from pathlib import Path

from .errors import GFCError, SpecParseError
from .kernel import (
    DistributedOrder,
    KernelSymbol,
    Logarithmic,
    Mixture,
    PowerLaw,
    FromMeasure,
    StieltjesMeasure,
)

_ALLOWED = {
    "power_law": {"alpha"},
    "mixture": {"weights", "exponents"},
    "distributed_order": {"mu_nodes"},
    "measure": {"measure_atoms", "measure_density"},
    "logarithmic": set(),
}
_REQUIRED = {
    "power_law": {"alpha"},
    "mixture": {"weights", "exponents"},
    "distributed_order": set(),
    "measure": set(),
    "logarithmic": set(),
}


def _split_pairs(text: str) -> dict[str, str]:
    fields: dict[str, str] = {}
    for raw in text.replace(";", "\n").splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SpecParseError(line, "expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise SpecParseError("<key>", f"empty key in line {raw.strip()!r}")
        if key in fields:
            raise SpecParseError(key, "given more than once")
        fields[key] = value
    return fields


def _real(key: str, text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise SpecParseError(key, f"{text!r} is not a real number") from None
    if value != value or value in (float("inf"), float("-inf")):
        raise SpecParseError(key, "must be finite")
    return value


def _reals(key: str, text: str) -> list[float]:
    items = [s.strip() for s in text.split(",")]
    if not text.strip() or any(not s for s in items):
        raise SpecParseError(key, "expected a comma-separated list of reals")
    return [_real(key, s) for s in items]


def _pairs(key: str, text: str) -> list[tuple[float, float]]:
    out = []
    for item in text.split(","):
        parts = item.split(":")
        if len(parts) != 2:
            raise SpecParseError(key, f"{item.strip()!r} is not a loc:mass pair")
        out.append((_real(key, parts[0]), _real(key, parts[1])))
    return out


def parse_kernel_spec(text: str) -> KernelSymbol:
    fields = _split_pairs(text)
    if "kind" not in fields:
        raise SpecParseError("kind", "missing")
    kind = fields.pop("kind")
    if kind not in _ALLOWED:
        raise SpecParseError("kind", f"unknown kind {kind!r}; expected one of {sorted(_ALLOWED)}")
    for key in fields:
        if key not in _ALLOWED[kind]:
            raise SpecParseError(key, f"not a field of kind {kind!r}")
    for key in _REQUIRED[kind]:
        if key not in fields:
            raise SpecParseError(key, f"required for kind {kind!r}")

    def build(key, factory):
        # constructor validation errors are attributed to the field
        try:
            return factory()
        except SpecParseError:
            raise
        except (GFCError, ValueError) as exc:
            raise SpecParseError(key, str(exc)) from None

    if kind == "power_law":
        alpha = _real("alpha", fields["alpha"])
        return build("alpha", lambda: PowerLaw(alpha))
    if kind == "mixture":
        w = _reals("weights", fields["weights"])
        a = _reals("exponents", fields["exponents"])
        if len(w) != len(a):
            raise SpecParseError("exponents", f"{len(a)} exponents for {len(w)} weights")
        bad_w = [x for x in w if not x > 0.0]
        if bad_w:
            raise SpecParseError("weights", f"weights must be > 0, got {bad_w[0]}")
        return build("exponents", lambda: Mixture(tuple(zip(w, a))))
    if kind == "distributed_order":
        mu = _reals("mu_nodes", fields["mu_nodes"]) if "mu_nodes" in fields else [1.0]
        return build("mu_nodes", lambda: DistributedOrder(tuple(mu)))
    if kind == "measure":
        atoms = _pairs("measure_atoms", fields["measure_atoms"]) if "measure_atoms" in fields else []
        dens = _pairs("measure_density", fields["measure_density"]) if "measure_density" in fields else []
        if not atoms and not dens:
            raise SpecParseError("measure_atoms", "a measure needs atoms or density nodes")
        key = "measure_atoms" if atoms else "measure_density"
        return build(key, lambda: FromMeasure(StieltjesMeasure(tuple(atoms), tuple(dens))))
    return Logarithmic()


def load_kernel(spec: str) -> KernelSymbol:
    """``spec`` is a path to a spec file or the spec text itself."""
    if "=" not in spec and (os.path.exists(spec) or spec.endswith((".txt", ".spec", ".kernel"))):
        path = Path(spec)
        try:
            text = path.read_text()
        except OSError as exc:
            raise SpecParseError("--kernel", f"cannot read {spec}: {exc.strerror}") from None
        return parse_kernel_spec(text)
    return parse_kernel_spec(spec)


def kernel_to_spec(symbol: KernelSymbol) -> str:
    """Inverse of :func:`parse_kernel_spec` for the built-in kinds."""
    if isinstance(symbol, PowerLaw):
        return f"kind=power_law; alpha={symbol.alpha!r}"
    if isinstance(symbol, Mixture):
        w = ", ".join(repr(x) for x, _ in symbol.terms)
        a = ", ".join(repr(x) for _, x in symbol.terms)
        return f"kind=mixture; weights={w}; exponents={a}"
    if isinstance(symbol, DistributedOrder):
        return "kind=distributed_order; mu_nodes=" + ", ".join(repr(x) for x in symbol.mu_nodes)
    if isinstance(symbol, FromMeasure):
        parts = ["kind=measure"]
        if symbol.measure.atoms:
            parts.append("measure_atoms=" + ", ".join(f"{a!r}:{m!r}" for a, m in symbol.measure.atoms))
        if symbol.measure.density_nodes:
            parts.append(
                "measure_density=" + ", ".join(f"{a!r}:{m!r}" for a, m in symbol.measure.density_nodes)
            )
        return "; ".join(parts)
    if isinstance(symbol, Logarithmic):
        return "kind=logarithmic"
    raise TypeError(f"no spec form for {type(symbol).__name__}")
