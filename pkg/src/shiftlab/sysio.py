"""System and configuration file formats (JSON, UTF-8, schema version 1).

Serialization is canonical: sorted keys, fixed separators, trailing
newline.  parse(serialize(x)) reproduces x and serialize is idempotent
on its own output, so canonical files round-trip bit-exactly.
"""

from __future__ import annotations

import json

from .groups import GroupCtx, QuotientCtx, Zd, group_from_descriptor
from .shifts import (Alphabet, FiniteConfig, FullShift, LatticePeriodicConfig,
                     Pattern, SFT1D, SFT2D, StripPeriodicConfig, Subshift)
from .ca import LocalRule, SymbolPermutation, rule_from_formula
from . import corpus


class FormatError(ValueError):
    pass


SCHEMA_VERSION = 1


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ": "),
                      indent=1) + "\n"


# --- configurations ---------------------------------------------------------


def config_to_obj(x) -> dict:
    ctx = x.ctx
    if isinstance(x, FiniteConfig):
        entries = sorted(((ctx.encode(g), s) for g, s in x.entries.items()),
                         key=lambda kv: (str(kv[0]), kv[1]))
        return {"kind": "finite", "entries": [[e, s] for e, s in entries]}
    if isinstance(x, LatticePeriodicConfig):
        cell = sorted(((ctx.encode(g), s) for g, s in x.cell.items()),
                      key=lambda kv: (str(kv[0]), kv[1]))
        return {"kind": "lattice_periodic",
                "basis": [list(r) for r in x.quotient.basis],
                "cell": [[e, s] for e, s in cell]}
    if isinstance(x, StripPeriodicConfig):
        entries = sorted(((ctx.encode(g), s) for g, s in x.entries.items()),
                         key=lambda kv: (str(kv[0]), kv[1]))
        return {"kind": "strip_periodic", "period": list(x.period),
                "entries": [[e, s] for e, s in entries]}
    raise FormatError(f"cannot serialize configuration {type(x).__name__}")


def config_from_obj(obj, ctx: GroupCtx, alphabet: Alphabet):
    kind = obj.get("kind")
    if kind == "finite":
        entries = {ctx.decode(e): s for e, s in obj.get("entries", [])}
        return FiniteConfig(ctx, alphabet, entries)
    if kind == "lattice_periodic":
        if not isinstance(ctx, Zd):
            raise FormatError("lattice-periodic configurations need a Z^d group")
        q = QuotientCtx(ctx, obj["basis"])
        cell = {q.project(tuple(e)): s for e, s in obj["cell"]}
        return LatticePeriodicConfig(q, alphabet, cell)
    if kind == "strip_periodic":
        entries = {ctx.decode(e): s for e, s in obj.get("entries", [])}
        return StripPeriodicConfig(ctx, alphabet, tuple(obj["period"]), entries)
    raise FormatError(f"unknown configuration kind {kind!r}")


# --- patterns ----------------------------------------------------------------


def pattern_to_obj(p: Pattern, ctx: GroupCtx) -> list:
    return [[ctx.encode(g), s] for g, s in p.cells]


def pattern_from_obj(obj, ctx: GroupCtx) -> Pattern:
    return Pattern.from_dict({ctx.decode(e): s for e, s in obj})


# --- rules --------------------------------------------------------------------


def rule_to_obj(f: LocalRule) -> dict:
    return {
        "alphabet": list(f.alphabet.symbols),
        "zero": f.alphabet.zero,
        "neighborhood": [f.ctx.encode(n) for n in f.neighborhood],
        "table": {",".join(w): s for w, s in sorted(f.table.items())},
    }


def rule_from_obj(obj, ctx: GroupCtx) -> LocalRule:
    if "formula" in obj:
        return rule_from_formula(obj["formula"], obj.get("params"))
    alphabet = Alphabet(tuple(obj["alphabet"]), obj.get("zero", "0"))
    neighborhood = [ctx.decode(n) for n in obj["neighborhood"]]
    table = {tuple(k.split(",")): v for k, v in obj["table"].items()}
    return LocalRule(ctx, alphabet, neighborhood, table,
                     name=obj.get("name"))


# --- shifts -------------------------------------------------------------------


_PREDICATE_SHIFTS = {
    "even-shift": corpus.even_shift,
    "spaceship-shift": corpus.spaceship_shift,
    "squares-shift": corpus.squares_shift,
    "reversal-union": corpus.reversal_union_shift,
    "north-or-east": corpus.northeast_sft,
}


def shift_to_obj(X: Subshift) -> dict:
    if isinstance(X, FullShift):
        return {"kind": "full"}
    if isinstance(X, SFT1D):
        return {"kind": "sft1d", "forbidden": ["".join(w) for w in X.forbidden]}
    if isinstance(X, SFT2D):
        if getattr(X, "exact_oracle", None) is not None:
            return {"kind": "predicate", "name": "north-or-east"}
        return {"kind": "sft2d",
                "forbidden": [pattern_to_obj(p, X.ctx) for p in X.forbidden]}
    name = getattr(X, "name", None)
    if name in _PREDICATE_SHIFTS:
        return {"kind": "predicate", "name": name}
    raise FormatError("cannot serialize this shift")


def shift_from_obj(obj, ctx: GroupCtx, alphabet: Alphabet) -> Subshift:
    kind = obj.get("kind")
    if kind == "full":
        return FullShift(ctx, alphabet)
    if kind == "sft1d":
        return SFT1D(alphabet, [tuple(w) for w in obj["forbidden"]])
    if kind == "sft2d":
        return SFT2D(alphabet, [pattern_from_obj(p, ctx) for p in obj["forbidden"]])
    if kind == "predicate":
        name = obj.get("name")
        if name not in _PREDICATE_SHIFTS:
            raise FormatError(f"unknown predicate shift {name!r}")
        return _PREDICATE_SHIFTS[name]()
    raise FormatError(f"unknown shift kind {kind!r}")


# --- system files -------------------------------------------------------------


class SystemFile:
    def __init__(self, group: GroupCtx, shift: Subshift, rules=None,
                 symmetries=None):
        self.group = group
        self.shift = shift
        self.rules = rules or {}
        self.symmetries = symmetries or {}

    def to_obj(self) -> dict:
        obj = {
            "version": SCHEMA_VERSION,
            "group": self.group.descriptor(),
            "alphabet": list(self.shift.alphabet.symbols),
            "zero": self.shift.alphabet.zero,
            "shift": shift_to_obj(self.shift),
        }
        if self.rules:
            obj["rules"] = {name: rule_to_obj(r) if r.name not in
                            _known_formulas() else {"formula": r.name}
                            for name, r in sorted(self.rules.items())}
        if self.symmetries:
            obj["symmetries"] = {name: {"kind": "symbol_permutation",
                                        "mapping": s.as_dict()}
                                 for name, s in sorted(self.symmetries.items())}
        return obj

    @staticmethod
    def from_obj(obj) -> "SystemFile":
        if obj.get("version") != SCHEMA_VERSION:
            raise FormatError(f"unsupported schema version {obj.get('version')!r}")
        group = group_from_descriptor(obj["group"])
        alphabet = Alphabet(tuple(obj["alphabet"]), obj.get("zero", "0"))
        shift = shift_from_obj(obj["shift"], group, alphabet)
        rules = {}
        for name, robj in obj.get("rules", {}).items():
            rules[name] = rule_from_obj(robj, group)
        symmetries = {}
        for name, sobj in obj.get("symmetries", {}).items():
            if sobj.get("kind") != "symbol_permutation":
                raise FormatError("only symbol permutations are supported")
            symmetries[name] = SymbolPermutation.from_dict(sobj["mapping"])
        return SystemFile(group, shift, rules, symmetries)

    def serialize(self) -> str:
        return dumps(self.to_obj())

    @staticmethod
    def parse(text: str) -> "SystemFile":
        return SystemFile.from_obj(json.loads(text))


def _known_formulas():
    from .ca import RULE_FORMULAS
    return set(RULE_FORMULAS)


def load_system(path) -> SystemFile:
    with open(path) as fh:
        return SystemFile.parse(fh.read())


def load_config(path, system: SystemFile):
    with open(path) as fh:
        obj = json.loads(fh.read())
    return config_from_obj(obj, system.group, system.shift.alphabet)
