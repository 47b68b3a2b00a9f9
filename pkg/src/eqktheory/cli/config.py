"""Workbench configuration: one YAML file with sections group, ring, action, budgets.

Example::

    group: C2
    ring:
      field: {p: 2, d: 2, modulus: [1, 1, 1]}
    action:
      frobenius: {fixed_degree: 1}
    budgets: {objects: 1000000, elements: 10000000}
    truncation: 3
    seed: 0

``group`` is a preset name or ``{table: [[...]], names: [...]}``.  ``ring``
is ``{field: {p, d, modulus?}}`` or ``{product: {p, d?, modulus?}}`` for
``F x F``.  ``action`` is ``trivial``, ``swap``, ``{frobenius: {fixed_degree}}``
or ``{generators: {element: permutation of ring elements}}``.

Errors carry the line and column of the offending node.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from importlib import resources

import yaml

from .._util import DEFAULT_MULT_BUDGET, DEFAULT_OBJECT_BUDGET
from ..algebra import (FiniteGroup, GRing, GroupError, RingError, make_finite_field,
                       make_galois_gring, preset_group, product_ring, swap_gring, trivial_gring)
from ..algebra.groups import _extend_on_generators
from ..galois import diagonal_extension, galois_field_extension, trivial_extension

SECTIONS = ("group", "ring", "action", "budgets", "truncation", "seed")


class ConfigError(ValueError):
    def __init__(self, msg, source="<config>", mark=None):
        self.msg = msg
        self.source = source
        self.line = mark.line + 1 if mark is not None else None
        self.column = mark.column + 1 if mark is not None else None
        where = f"{source}:{self.line}:{self.column}" if mark is not None else source
        super().__init__(f"{where}: {msg}")


class _Node:
    """A parsed YAML value with the position it came from."""

    def __init__(self, value, mark):
        self.value = value
        self.mark = mark


def _lift(node):
    if isinstance(node, yaml.MappingNode):
        out = {}
        for k, v in node.value:
            out[k.value] = _lift(v)
            out[k.value].key_mark = k.start_mark
        return _Node(out, node.start_mark)
    if isinstance(node, yaml.SequenceNode):
        return _Node([_lift(v) for v in node.value], node.start_mark)
    return _Node(yaml.safe_load(yaml.serialize(node)), node.start_mark)


@dataclass(frozen=True)
class GroupSpec:
    preset: str | None = None
    table: tuple | None = None
    names: tuple | None = None

    def build(self):
        if self.preset is not None:
            return preset_group(self.preset)
        return FiniteGroup(self.table, names=self.names, name=f"G{len(self.table)}")

    def as_dict(self):
        if self.preset is not None:
            return self.preset
        out = {"table": [list(r) for r in self.table]}
        if self.names is not None:
            out["names"] = list(self.names)
        return out


@dataclass(frozen=True)
class RingSpec:
    kind: str  # "field" or "product"
    p: int
    d: int = 1
    modulus: tuple | None = None

    def build_field(self):
        return make_finite_field(self.p, self.d, self.modulus)

    def build(self):
        F = self.build_field()
        return F if self.kind == "field" else product_ring(F, F)

    def as_dict(self):
        inner = {"p": self.p, "d": self.d}
        if self.modulus is not None:
            inner["modulus"] = list(self.modulus)
        return {self.kind: inner}


@dataclass(frozen=True)
class ActionSpec:
    kind: str  # trivial, swap, frobenius, generators
    fixed_degree: int | None = None
    images: tuple = ()  # ((element, permutation), ...)

    def as_dict(self):
        if self.kind in ("trivial", "swap"):
            return self.kind
        if self.kind == "frobenius":
            return {"frobenius": {"fixed_degree": self.fixed_degree}}
        return {"generators": {str(g): list(p) for g, p in self.images}}


@dataclass(frozen=True)
class WorkbenchConfig:
    group: GroupSpec = field(default_factory=lambda: GroupSpec("C2"))
    ring: RingSpec = field(default_factory=lambda: RingSpec("field", 2, 2))
    action: ActionSpec = field(default_factory=lambda: ActionSpec("frobenius", 1))
    objects: int = DEFAULT_OBJECT_BUDGET
    elements: int = DEFAULT_MULT_BUDGET
    truncation: int = 3
    seed: int = 0
    name: str = "default"

    def with_flags(self, max_rank=None, seed=None, budget_objects=None):
        changes = {}
        if max_rank is not None:
            changes["truncation"] = max_rank
        if seed is not None:
            changes["seed"] = seed
        if budget_objects is not None:
            changes["objects"] = budget_objects
        out = replace(self, **changes)
        if out.truncation < 0 or out.objects < 1:
            raise ConfigError("max-rank must be >= 0 and budgets positive", "<flags>")
        return out

    def as_dict(self):
        return {"name": self.name, "group": self.group.as_dict(), "ring": self.ring.as_dict(),
                "action": self.action.as_dict(),
                "budgets": {"objects": self.objects, "elements": self.elements},
                "truncation": self.truncation, "seed": self.seed}

    def gring(self):
        """The G-ring this configuration describes."""
        G, rs, act = self.group.build(), self.ring, self.action
        if act.kind == "frobenius":
            if rs.kind != "field":
                raise ConfigError("a Frobenius action needs a field")
            GR = make_galois_gring(rs.p, rs.d, act.fixed_degree, rs.modulus)
            if GR.group.order != G.order:
                raise ConfigError(f"the Frobenius group has order {GR.group.order}, "
                                  f"but group {G.name} has order {G.order}")
            return GR
        if act.kind == "swap":
            if rs.kind != "product" or G.order != 2:
                raise ConfigError("a swap action needs a product ring and a group of order 2")
            return swap_gring(rs.build_field())
        R = rs.build()
        if act.kind == "trivial":
            return trivial_gring(R, G)
        gens = [g for g, _ in act.images]
        perms = [tuple(p) for _, p in act.images]
        table = _extend_on_generators(G, gens, perms, lambda x, v, s: tuple(v[i] for i in s),
                                      tuple(range(R.size)))
        if table is None:
            raise ConfigError("generator images do not define an action of the group")
        return GRing(R, G, table, name=f"{R.name}/{G.name}")

    def extension(self):
        """The ring extension ``R^G -> R`` for galois-check and assembly."""
        rs, act = self.ring, self.action
        if act.kind == "frobenius":
            self.gring()  # validates the group order
            return galois_field_extension(rs.p, rs.d, act.fixed_degree, rs.modulus)
        if act.kind == "swap":
            self.gring()
            return diagonal_extension(rs.build_field())
        if act.kind == "trivial":
            return trivial_extension(rs.build(), self.group.build())
        raise ConfigError("ring extensions are built for frobenius, swap and trivial actions only")


# parsing

def _expect(node, kind, what, source):
    if not isinstance(node.value, kind):
        names = {dict: "a mapping", list: "a list", int: "an integer", str: "a name"}
        raise ConfigError(f"{what} must be {names[kind]}", source, node.mark)
    if kind is int and isinstance(node.value, bool):
        raise ConfigError(f"{what} must be an integer", source, node.mark)
    return node.value


def _keys(node, allowed, what, source):
    body = _expect(node, dict, what, source)
    for k, v in body.items():
        if k not in allowed:
            raise ConfigError(f"unknown key {k!r} in {what}; expected one of {list(allowed)}",
                              source, v.key_mark)
    return body


def _int(node, what, source, minimum=None):
    v = _expect(node, int, what, source)
    if minimum is not None and v < minimum:
        raise ConfigError(f"{what} must be >= {minimum}", source, node.mark)
    return v


def _int_list(node, what, source):
    return tuple(_int(x, what, source, 0) for x in _expect(node, list, what, source))


def _group(node, source):
    if isinstance(node.value, str):
        try:
            preset_group(node.value)
        except GroupError as e:
            raise ConfigError(str(e), source, node.mark) from None
        return GroupSpec(preset=node.value)
    body = _keys(node, ("table", "names"), "group", source)
    if "table" not in body:
        raise ConfigError("group needs a preset name or a table", source, node.mark)
    rows = tuple(_int_list(r, "group table row", source)
                 for r in _expect(body["table"], list, "group table", source))
    names = None
    if "names" in body:
        names = tuple(str(x.value) for x in _expect(body["names"], list, "group names", source))
        if len(names) != len(rows):
            raise ConfigError("one name per group element", source, body["names"].mark)
    rs = GroupSpec(table=rows, names=names)
    try:
        rs.build()
    except GroupError as e:
        raise ConfigError(str(e), source, body["table"].mark) from None
    return rs


def _ring(node, source):
    body = _keys(node, ("field", "product"), "ring", source)
    if len(body) != 1:
        raise ConfigError("ring needs exactly one of field, product", source, node.mark)
    kind, inner = next(iter(body.items()))
    fields = _keys(inner, ("p", "d", "modulus"), f"ring {kind}", source)
    if "p" not in fields:
        raise ConfigError(f"ring {kind} needs p", source, inner.mark)
    p = _int(fields["p"], "p", source, 2)
    d = _int(fields["d"], "d", source, 1) if "d" in fields else 1
    modulus = _int_list(fields["modulus"], "modulus", source) if "modulus" in fields else None
    rs = RingSpec(kind, p, d, modulus)
    try:
        rs.build_field()
    except RingError as e:
        raise ConfigError(str(e), source, inner.mark) from None
    return rs


def _action(node, group, source):
    if isinstance(node.value, str):
        if node.value not in ("trivial", "swap"):
            raise ConfigError(f"unknown action {node.value!r}", source, node.mark)
        return ActionSpec(node.value)
    body = _keys(node, ("frobenius", "generators"), "action", source)
    if len(body) != 1:
        raise ConfigError("action needs exactly one of frobenius, generators", source, node.mark)
    kind, inner = next(iter(body.items()))
    if kind == "frobenius":
        fields = _keys(inner, ("fixed_degree",), "frobenius", source)
        deg = _int(fields["fixed_degree"], "fixed_degree", source, 1) if fields else 1
        return ActionSpec("frobenius", fixed_degree=deg)
    G = group.build()
    images = []
    for k, v in _expect(inner, dict, "generators", source).items():
        if k in G.names:
            g = G.names.index(k)
        elif k.isdigit() and int(k) < G.order:
            g = int(k)
        else:
            raise ConfigError(f"unknown group element {k!r}", source, v.key_mark)
        images.append((g, _int_list(v, "generator image", source)))
    return ActionSpec("generators", images=tuple(images))


def parse_config(text, source="<config>", name=None):
    """Parse YAML text into a WorkbenchConfig; ConfigError on any problem."""
    try:
        root = yaml.compose(text)
    except yaml.MarkedYAMLError as e:
        raise ConfigError(e.problem or str(e), source, e.problem_mark) from None
    if root is None:
        raise ConfigError("empty configuration", source)
    top = _keys(_lift(root), SECTIONS, "configuration", source)
    cfg = WorkbenchConfig(name=name or source)
    changes = {}
    if "group" in top:
        changes["group"] = _group(top["group"], source)
    if "ring" in top:
        changes["ring"] = _ring(top["ring"], source)
    if "action" in top:
        changes["action"] = _action(top["action"], changes.get("group", cfg.group), source)
    if "budgets" in top:
        b = _keys(top["budgets"], ("objects", "elements"), "budgets", source)
        if "objects" in b:
            changes["objects"] = _int(b["objects"], "objects budget", source, 1)
        if "elements" in b:
            changes["elements"] = _int(b["elements"], "elements budget", source, 1)
    if "truncation" in top:
        changes["truncation"] = _int(top["truncation"], "truncation", source, 0)
    if "seed" in top:
        changes["seed"] = _int(top["seed"], "seed", source, 0)
    cfg = replace(cfg, **changes)
    try:
        cfg.gring()
    except (RingError, GroupError) as e:
        raise ConfigError(str(e), source, top.get("action", _Node(None, None)).mark) from None
    except ConfigError as e:
        raise ConfigError(e.msg, source, top.get("action", _Node(None, None)).mark) from None
    return cfg


def load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ConfigError(e.strerror or str(e), str(path)) from None
    return parse_config(text, source=str(path))


def preset_names():
    folder = resources.files("eqktheory.cli") / "presets"
    return sorted(p.name[:-5] for p in folder.iterdir() if p.name.endswith(".yaml"))


def load_preset(name):
    path = resources.files("eqktheory.cli") / "presets" / f"{name}.yaml"
    if not path.is_file():
        raise ConfigError(f"unknown preset {name!r}; known: {preset_names()}", "<preset>")
    return parse_config(path.read_text(encoding="utf-8"), source=f"preset {name}", name=name)
