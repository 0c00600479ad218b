"""Instance files: algebras, bimodules, triangular algebras and tasks in TOML.

A minimal file::

    [algebras.Q]
    builtin = "ground_field"

    [bimodules.M]
    left = "Q"
    right = "Q"
    builtin = "regular"

    [triangular.T]
    a = "Q"
    m = "M"
    b = "Q"

    [[tasks]]
    op = "thm3.1"
    triangular = "T"
    coeff = "T*"
    max_degree = 3

Algebras are either ``builtin`` (with ``n`` where needed) or explicit::

    dim = 2
    mult = [[["1", "0"], ["0", "1"]], [["0", "1"], ["0", "0"]]]   # mult[i][j] = e_i e_j
    unit = ["1", "0"]

Bimodules are ``builtin`` (regular, dual_regular, dual, simple, column,
direct_sum, via_corners) or give ``left_action`` / ``right_action`` as one
matrix (list of rows) per basis element.  Scalars are integers or
``"p/q"`` strings; floats are rejected.  A triangular name may be used
wherever an algebra name is expected and then stands for T itself.
"""

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import catalog
from .algebra import Algebra, validate
from .bimodule import Bimodule, direct_sum, dual, validate_bimodule
from .errors import HochwerkError, ParseError, ValidationError
from .linalg import RatMatrix, rat
from .triangular import build_triangular, via_corners

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

BUILTIN_ALGEBRAS = {
    "ground_field": lambda n: catalog.ground_field(),
    "diagonal": catalog.diagonal,
    "truncated_polynomial": catalog.truncated_polynomial,
    "dual_numbers": lambda n: catalog.dual_numbers(),
    "matrix": catalog.matrix_algebra,
    "upper_triangular": catalog.upper_triangular,
    "lower_triangular": catalog.lower_triangular,
}

REQUIRED = {
    "thm3.8": ("algebra", "module"),
    "ext": ("algebra", "module", "target"),
    "cohomology": ("algebra",),
    "homology": ("algebra",),
    "duality": ("algebra",),
    "trace": ("algebra",),
}
for _op in ("thm3.1", "cor3.2", "thm3.3", "cor3.4", "cor3.5", "thm3.6", "phi0"):
    REQUIRED[_op] = ("triangular",)
OPS = tuple(REQUIRED)


@dataclass
class Task:
    op: str
    args: dict
    index: int

    @property
    def max_degree(self):
        return self.args.get("max_degree")


@dataclass
class InstanceFile:
    path: str
    algebras: dict = field(default_factory=dict)
    bimodules: dict = field(default_factory=dict)
    triangulars: dict = field(default_factory=dict)
    tasks: list = field(default_factory=list)

    def algebra(self, name):
        if name in self.algebras:
            return self.algebras[name]
        if name in self.triangulars:
            return self.triangulars[name].t
        raise ParseError(f"unknown algebra {name!r}", field=name)


def bundled_path(name="t3.toml"):
    return Path(str(resources.files("hochwerk") / "data" / name))


def _line_of(text, *patterns):
    """1-based line of the first line matching any regex in ``patterns``."""
    for pat in patterns:
        rx = re.compile(pat)
        for no, line in enumerate(text.splitlines(), 1):
            if rx.search(line):
                return no
    return None


def _header_line(text, table, name):
    n = re.escape(name)
    return _line_of(text, rf"^\s*\[\s*{table}\.\"?{n}\"?\s*\]", rf"^\s*{table}\.\"?{n}\"?\s*=",
                    rf"\b{n}\b")


class _Reader:
    def __init__(self, text, data, path):
        self.text = text
        self.data = data
        self.inst = InstanceFile(str(path))
        self._busy = set()

    # -- helpers --------------------------------------------------------

    def fail(self, msg, table, name, key=None):
        fld = f"{table}.{name}" + (f".{key}" if key else "")
        raise ParseError(msg, line=_header_line(self.text, table, name), field=fld)

    def scalar(self, v, table, name, key):
        if isinstance(v, bool) or isinstance(v, float):
            self.fail(f"scalar {v!r} must be an integer or a 'p/q' string", table, name, key)
        try:
            return rat(v)
        except (ValueError, ZeroDivisionError, TypeError):
            self.fail(f"cannot parse scalar {v!r}", table, name, key)

    def matrix(self, rows, table, name, key, size=None):
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            self.fail("matrix must be a list of rows", table, name, key)
        nr = len(rows)
        nc = len(rows[0]) if rows else 0
        if any(len(r) != nc for r in rows) or (size is not None and (nr, nc) != (size, size)):
            self.fail(f"matrix has inconsistent shape (expected {size}x{size})", table, name, key)
        return RatMatrix.from_rows([[self.scalar(v, table, name, key) for v in r] for r in rows], nc)

    def _entry(self, table, name):
        specs = self.data.get(table, {})
        if not isinstance(specs, dict) or name not in specs:
            return None
        s = specs[name]
        if not isinstance(s, dict):
            self.fail("expected a table", table, name)
        return s

    def _enter(self, key):
        if key in self._busy:
            raise ParseError(f"circular reference through {key[1]!r}", field=f"{key[0]}.{key[1]}")
        self._busy.add(key)

    # -- algebras -------------------------------------------------------

    def algebra(self, name, table="?", owner="?", key=None):
        if not isinstance(name, str):
            self.fail(f"algebra reference must be a name, got {name!r}", table, owner, key)
        if name in self.inst.algebras:
            return self.inst.algebras[name]
        if self._entry("algebras", name) is not None:
            return self._build_algebra(name)
        if self._entry("triangular", name) is not None:
            return self.triangular(name).t
        self.fail(f"unknown algebra {name!r}", table, owner, key)

    def _build_algebra(self, name):
        s = self._entry("algebras", name)
        if "builtin" in s:
            kind = s["builtin"]
            if kind not in BUILTIN_ALGEBRAS:
                self.fail(f"unknown builtin algebra {kind!r}", "algebras", name, "builtin")
            n = s.get("n", 2)
            if not isinstance(n, int) or isinstance(n, bool) or n < 1:
                self.fail("n must be a positive integer", "algebras", name, "n")
            alg = BUILTIN_ALGEBRAS[kind](n)
        else:
            dim = s.get("dim")
            if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
                self.fail("dim must be a nonnegative integer", "algebras", name, "dim")
            mult = s.get("mult")
            if (not isinstance(mult, list) or len(mult) != dim
                    or any(not isinstance(r, list) or len(r) != dim for r in mult)):
                self.fail(f"mult must be a {dim}x{dim} array of coefficient vectors",
                          "algebras", name, "mult")
            table = {}
            for i, row in enumerate(mult):
                for j, vec in enumerate(row):
                    if not isinstance(vec, list) or len(vec) != dim:
                        self.fail(f"mult[{i}][{j}] must have {dim} coefficients",
                                  "algebras", name, "mult")
                    coeffs = {k: self.scalar(v, "algebras", name, "mult") for k, v in enumerate(vec)}
                    coeffs = {k: v for k, v in coeffs.items() if v}
                    if coeffs:
                        table[i, j] = coeffs
            unit = s.get("unit")
            if unit is not None:
                if not isinstance(unit, list) or len(unit) != dim:
                    self.fail(f"unit must have {dim} entries", "algebras", name, "unit")
                unit = [self.scalar(v, "algebras", name, "unit") for v in unit]
            alg = Algebra(dim, table, unit)
        alg.name = name
        try:
            validate(alg)
        except HochwerkError as e:
            raise ValidationError(name, e) from e
        self.inst.algebras[name] = alg
        return alg

    # -- bimodules ------------------------------------------------------

    def bimodule(self, name, table="?", owner="?", key=None):
        if not isinstance(name, str):
            self.fail(f"bimodule reference must be a name, got {name!r}", table, owner, key)
        if name in self.inst.bimodules:
            return self.inst.bimodules[name]
        if self._entry("bimodules", name) is None:
            self.fail(f"unknown bimodule {name!r}", table, owner, key)
        self._enter(("bimodules", name))
        x = self._build_bimodule(name)
        self._busy.discard(("bimodules", name))
        x.name = name
        self.inst.bimodules[name] = x
        return x

    def _build_bimodule(self, name):
        s = self._entry("bimodules", name)
        kind = s.get("builtin")
        T = "bimodules"
        unital = s.get("unital", True)
        if kind == "via_corners":
            td = self.triangular(s.get("triangular"), T, name, "triangular")
            y = self.bimodule(s.get("source"), T, name, "source")
            return self._checked(name, lambda: via_corners(td, y, require_unital=unital))
        if kind == "dual":
            return dual(self.bimodule(s.get("source"), T, name, "source"))
        if kind == "direct_sum":
            parts = s.get("parts")
            if not isinstance(parts, list) or not parts:
                self.fail("direct_sum needs a nonempty 'parts' list", T, name, "parts")
            mods = [self.bimodule(p, T, name, "parts") for p in parts]
            return self._checked(name, lambda: direct_sum(*mods))

        left = self.algebra(s.get("left"), T, name, "left")
        if "right" in s:
            right = self.algebra(s["right"], T, name, "right")
        else:
            right = catalog.ground_field()
        if kind == "regular" or kind == "dual_regular":
            if left != right:
                self.fail(f"{kind} needs left == right", T, name, "right")
            x = Bimodule.regular(left)
            x = Bimodule(left, right, x.dim, x.left_act, x.right_act)
            return dual(x) if kind == "dual_regular" else x
        if kind == "simple":
            idx = s.get("index", 0)
            if not isinstance(idx, int) or not 0 <= idx < left.dim:
                self.fail("index out of range", T, name, "index")
            x = catalog.simple_module(left, idx)
        elif kind == "column":
            n = s.get("n", 2)
            upper = bool(s.get("upper", False))
            x = catalog.column_module(n, upper=upper)
            if x.left_alg != left:
                self.fail("column module does not match the left algebra", T, name, "left")
            x = Bimodule(left, x.right_alg, x.dim, x.left_act, x.right_act)
        elif kind is None:
            dim = s.get("dim")
            if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
                self.fail("dim must be a nonnegative integer", T, name, "dim")
            la = s.get("left_action")
            if not isinstance(la, list) or len(la) != left.dim:
                self.fail(f"left_action needs {left.dim} matrices", T, name, "left_action")
            lmats = [self.matrix(m, T, name, "left_action", dim) for m in la]
            ra = s.get("right_action")
            if ra is None and right.dim == 1:
                rmats = [RatMatrix.identity(dim)]
            else:
                if not isinstance(ra, list) or len(ra) != right.dim:
                    self.fail(f"right_action needs {right.dim} matrices", T, name, "right_action")
                rmats = [self.matrix(m, T, name, "right_action", dim) for m in ra]
            x = Bimodule(left, right, dim, lmats, rmats)
        else:
            self.fail(f"unknown builtin bimodule {kind!r}", T, name, "builtin")
        if x.right_alg != right:
            self.fail("right algebra must be the ground field for this builtin", T, name, "right")
        x = Bimodule(left, right, x.dim, x.left_act, x.right_act)
        return self._checked(name, lambda: x)

    def _checked(self, name, build):
        try:
            x = build()
            validate_bimodule(x, require_unital=self._entry("bimodules", name).get("unital", True))
        except HochwerkError as e:
            raise ValidationError(name, e) from e
        return x

    # -- triangular algebras -------------------------------------------

    def triangular(self, name, table="triangular", owner=None, key=None):
        if not isinstance(name, str):
            self.fail(f"triangular reference must be a name, got {name!r}", table, owner, key)
        if name in self.inst.triangulars:
            return self.inst.triangulars[name]
        s = self._entry("triangular", name)
        if s is None:
            self.fail(f"unknown triangular algebra {name!r}", table, owner or name, key)
        self._enter(("triangular", name))
        a = self.algebra(s.get("a"), "triangular", name, "a")
        b = self.algebra(s.get("b"), "triangular", name, "b")
        m = self.bimodule(s.get("m"), "triangular", name, "m")
        if m.left_alg != a or m.right_alg != b:
            self.fail("m must be an (a, b)-bimodule", "triangular", name, "m")
        try:
            td = build_triangular(a, m, b, name=name)
        except HochwerkError as e:
            raise ValidationError(name, e) from e
        self._busy.discard(("triangular", name))
        self.inst.triangulars[name] = td
        return td

    # -- everything -----------------------------------------------------

    def read(self):
        for top in self.data:
            if top not in ("algebras", "bimodules", "triangular", "tasks", "meta"):
                raise ParseError(f"unknown top-level key {top!r}",
                                 line=_line_of(self.text, rf"^\s*\[+\s*{re.escape(top)}\b",
                                               rf"^\s*{re.escape(top)}\s*="), field=top)
        for name in self.data.get("algebras", {}):
            self.algebra(name)
        for name in self.data.get("bimodules", {}):
            self.bimodule(name)
        for name in self.data.get("triangular", {}):
            self.triangular(name)
        tasks = self.data.get("tasks", [])
        if not isinstance(tasks, list):
            raise ParseError("tasks must be an array of tables", field="tasks")
        for i, t in enumerate(tasks):
            self.inst.tasks.append(self._task(i, t))
        return self.inst

    def _task(self, i, t):
        where = dict(line=_nth_task_line(self.text, i), field=f"tasks[{i}]")
        if not isinstance(t, dict) or "op" not in t:
            raise ParseError("task needs an 'op'", **where)
        op = t["op"]
        if op not in OPS:
            raise ParseError(f"unknown op {op!r}", **where)
        args = {k: v for k, v in t.items() if k != "op"}
        missing = [k for k in REQUIRED[op] if k not in args]
        if missing:
            raise ParseError(f"{op} task is missing {', '.join(missing)}", **where)
        for k in ("max_degree", "n", "nesting"):
            if k in args and (not isinstance(args[k], int) or isinstance(args[k], bool) or args[k] < 0):
                raise ParseError(f"{k} must be a nonnegative integer", **where)
        if "triangular" in args and args["triangular"] not in self.inst.triangulars:
            raise ParseError(f"unknown triangular algebra {args['triangular']!r}", **where)
        for k in ("algebra",):
            if k in args:
                try:
                    self.inst.algebra(args[k])
                except ParseError:
                    raise ParseError(f"unknown algebra {args[k]!r}", **where) from None
        for k in ("module", "target", "right"):
            if k in args and args[k] not in self.inst.bimodules:
                raise ParseError(f"unknown bimodule {args[k]!r}", **where)
        return Task(op, args, i)


def _nth_task_line(text, i):
    hits = [no for no, line in enumerate(text.splitlines(), 1)
            if re.match(r"^\s*\[\[\s*tasks\s*\]\]", line)]
    return hits[i] if i < len(hits) else None


def loads(text, path="<string>"):
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        raise ParseError(str(e), line=getattr(e, "lineno", None)) from e
    return _Reader(text, data, path).read()


def parse_instance(path):
    """Read and validate an instance file; raises ParseError or ValidationError."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror or e}") from e
    return loads(text, path)
