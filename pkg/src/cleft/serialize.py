"""Declarative JSON form of Hopf presentations, and an expression reader for
elements of localized rings and finite free algebras."""

from __future__ import annotations

import json
import re

from .errors import ParseError
from .freealg import Factor, FiniteFreeAlgebra
from .hopf import HopfPresentation
from .localized import LocalizedRing
from .polynomial import format_poly, parse_poly

FORMAT = "cleft.hopf"
VERSION = 1

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*'*(?:\|\d+)?'*)|([-+*^/()]))")


def _tokens(text):
    out, pos, text = [], 0, text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot read {text!r} at position {pos}")
        pos = m.end()
        num, name, op = m.groups()
        out.append(("num", int(num)) if num is not None else ("name", name) if name else ("op", op))
    return out


def _atom_reader(ring):
    if isinstance(ring, FiniteFreeAlgebra):
        def atom(name):
            if name in ring.names:
                return ring.gen(name)
            if name in ring.scalars.variables:
                return ring.scalar(ring.scalars.var(name))
            raise ParseError(f"unknown name {name!r}")
        return atom, lambda k: ring.scalar(k)

    def atom(name):
        if name in ring.variables:
            return ring.var(name)
        raise ParseError(f"unknown name {name!r}")
    return atom, ring.const


def parse_element(ring, text: str):
    """Evaluate ``text`` (sums, products, powers, quotients, parentheses) in ``ring``."""
    tokens = _tokens(text)
    if not tokens:
        raise ParseError("empty expression")
    atom, const = _atom_reader(ring)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take():
        nonlocal pos
        pos += 1
        return tokens[pos - 1] if pos <= len(tokens) else (None, None)

    def expr():
        val = term()
        while peek() in (("op", "+"), ("op", "-")):
            _, op = take()
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term():
        val = unary()
        while peek() in (("op", "*"), ("op", "/")):
            _, op = take()
            rhs = unary()
            val = val * rhs if op == "*" else val / rhs
        return val

    def unary():
        if peek() == ("op", "-"):
            take()
            return -unary()
        base = primary()
        if peek() == ("op", "^"):
            take()
            sign = 1
            if peek() == ("op", "-"):
                take()
                sign = -1
            kind, k = take()
            if kind != "num":
                raise ParseError(f"exponent must be an integer in {text!r}")
            base = base ** (sign * k)
        return base

    def primary():
        kind, val = take()
        if kind == "num":
            return const(val)
        if kind == "name":
            return atom(val)
        if (kind, val) == ("op", "("):
            inner = expr()
            if take() != ("op", ")"):
                raise ParseError(f"unbalanced parentheses in {text!r}")
            return inner
        raise ParseError(f"unexpected token {val!r} in {text!r}")

    result = expr()
    if pos != len(tokens):
        raise ParseError(f"trailing input in {text!r}")
    return result


# -- presentations ----------------------------------------------------------------

def _ring_doc(ring: LocalizedRing, skip=()):
    return {"variables": [v for v in ring.variables if v not in skip],
            "denominators": [format_poly(d) for d in ring.denominators]}


def hopf_to_dict(H: HopfPresentation) -> dict:
    carrier = H.carrier
    doc = {"format": FORMAT, "version": VERSION, "name": H.name}
    if isinstance(carrier, FiniteFreeAlgebra):
        scalars = carrier.scalars
        doc["characteristic"] = carrier.p
        doc["scalars"] = _ring_doc(scalars)
        doc["carrier"] = {
            "kind": "finite-free",
            "factors": [{"name": f.name, "degree": f.degree,
                         "relation": [str(c) for c in f.relation],
                         "augmentation": None if f.augmentation is None else str(f.augmentation)}
                        for f in carrier.factors],
            "basis": [carrier.basis_label(e) for e in carrier.basis()],
        }
    else:
        base = carrier.base_ring()
        doc["characteristic"] = carrier.p
        doc["scalars"] = _ring_doc(base)
        own = [format_poly(d) for d in carrier.denominators if format_poly(d) not in doc["scalars"]["denominators"]]
        doc["carrier"] = {"kind": "localized", "variables": list(carrier.coordinate_variables),
                          "denominators": own}
    doc["comultiplication"] = {g: str(H.comult_table[g]) for g in H.generators}
    doc["counit"] = {g: str(H.counit_table[g]) for g in H.generators}
    doc["antipode"] = {g: str(H.antipode_table[g]) for g in H.generators}
    return doc


def hopf_from_dict(doc: dict) -> HopfPresentation:
    if doc.get("format") != FORMAT or doc.get("version") != VERSION:
        raise ParseError("not a version-1 Hopf presentation document")
    p = int(doc["characteristic"])
    sv = tuple(doc["scalars"]["variables"])
    sdens = [parse_poly(d, p, sv) for d in doc["scalars"]["denominators"]]
    scalars = LocalizedRing(sv, sdens, p, sv)
    spec = doc["carrier"]
    if spec["kind"] == "finite-free":
        factors = []
        for f in spec["factors"]:
            rel = tuple(parse_element(scalars, c) for c in f["relation"])
            aug = None if f["augmentation"] is None else parse_element(scalars, f["augmentation"])
            factors.append(Factor(f["name"], int(f["degree"]), rel, aug))
        carrier = FiniteFreeAlgebra(factors, scalars)
        base = scalars
    elif spec["kind"] == "localized":
        variables = sv + tuple(spec["variables"])
        dens = sdens + [parse_poly(d, p, variables) for d in spec["denominators"]]
        carrier = LocalizedRing(variables, dens, p, sv)
        base = carrier.base_ring()
    else:
        raise ParseError(f"unknown carrier kind {spec['kind']!r}")
    t2 = carrier.tensor_power(2)
    comult = {g: parse_element(t2, t) for g, t in doc["comultiplication"].items()}
    counit = {g: parse_element(base, t) for g, t in doc["counit"].items()}
    antipode = {g: parse_element(carrier, t) for g, t in doc["antipode"].items()}
    return HopfPresentation(carrier, comult, counit, antipode, name=doc.get("name", "H"))


def dumps_hopf(H: HopfPresentation) -> str:
    return json.dumps(hopf_to_dict(H), indent=2) + "\n"


def loads_hopf(text: str) -> HopfPresentation:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc)) from exc
    return hopf_from_dict(doc)
