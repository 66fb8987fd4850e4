"""Quivers, k-quivers, maps of k-quivers and bounded path enumeration.

Paths are written the way compositions are: the tuple (c, b) is the path
"first b, then c", so concatenating u after v requires source(u) == target(v)
and the combined name tuple is u.names + v.names.
"""

from __future__ import annotations

from .errors import InputError, ShapeError
from .fields import same_field
from .linalg import Mat


class Path:
    """A path in a (k-)quiver; names are in composition order (latest first)."""

    __slots__ = ("source", "target", "names", "vertices")

    def __init__(self, source, target, names, vertices):
        self.source = source
        self.target = target
        self.names = tuple(names)
        # vertex chain in composition order: vertices[0] == target, vertices[-1] == source
        self.vertices = tuple(vertices)

    @classmethod
    def stationary(cls, vertex) -> "Path":
        return cls(vertex, vertex, (), (vertex,))

    @property
    def length(self) -> int:
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, Path) and self.names == other.names and self.vertices == other.vertices

    def __hash__(self):
        return hash((self.names, self.vertices))

    def __repr__(self):
        if not self.names:
            return f"Path(e_{self.source})"
        return f"Path({''.join(self.names)}: {self.source}->{self.target})"

    def concat(self, other: "Path") -> "Path":
        """self after other; requires source(self) == target(other)."""
        if self.source != other.target:
            raise ShapeError(f"paths not composable: {self!r} after {other!r}")
        return Path(other.source, self.target, self.names + other.names, self.vertices + other.vertices[1:])

    def splits(self):
        """All factorizations self = left . right, longest right part first."""
        out = []
        for i in range(len(self.names) + 1):
            left = Path(self.vertices[i], self.target, self.names[:i], self.vertices[: i + 1])
            right = Path(self.source, self.vertices[i], self.names[i:], self.vertices[i:])
            out.append((left, right))
        return out


def _check_vertices(vertices):
    vertices = tuple(str(v) for v in vertices)
    if len(set(vertices)) != len(vertices):
        raise InputError("duplicate vertex labels")
    if not vertices:
        raise InputError("a quiver needs at least one vertex")
    return vertices


class Quiver:
    """Finite directed graph with named arrows."""

    __slots__ = ("vertices", "arrows", "_by_name")

    def __init__(self, vertices, arrows):
        self.vertices = _check_vertices(vertices)
        vset = set(self.vertices)
        arrows = tuple((str(n), str(s), str(t)) for n, s, t in arrows)
        names = [a[0] for a in arrows]
        if len(set(names)) != len(names):
            raise InputError("duplicate arrow names")
        for name, src, tgt in arrows:
            if src not in vset or tgt not in vset:
                raise InputError(f"arrow {name!r} has undeclared endpoint")
        self.arrows = arrows
        self._by_name = {n: (s, t) for n, s, t in arrows}

    def __eq__(self, other):
        return isinstance(other, Quiver) and self.vertices == other.vertices and self.arrows == other.arrows

    def __repr__(self):
        return f"Quiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"

    def arrow_items(self):
        return list(self.arrows)


class KQuiver:
    """Vertex set with a based vector space of arrows for each ordered pair.

    Arrow-basis names must be globally unique so that name chains identify
    paths unambiguously.
    """

    __slots__ = ("vertices", "spaces", "_pair_of_name")

    def __init__(self, vertices, spaces):
        self.vertices = _check_vertices(vertices)
        vset = set(self.vertices)
        cleaned = {}
        pair_of_name = {}
        for (g, h), names in spaces.items():
            g, h = str(g), str(h)
            if g not in vset or h not in vset:
                raise InputError(f"arrow space ({g},{h}) has undeclared vertex")
            names = tuple(str(n) for n in names)
            if not names:
                continue
            for n in names:
                if n in pair_of_name:
                    raise InputError(f"arrow basis name {n!r} used twice")
                pair_of_name[n] = (g, h)
            cleaned[(g, h)] = names
        self.spaces = cleaned
        self._pair_of_name = pair_of_name

    @classmethod
    def with_dims(cls, vertices, dims) -> "KQuiver":
        """Build from {pair: dimension}; basis names are generated."""
        spaces = {}
        for (g, h), d in dims.items():
            spaces[(g, h)] = tuple(f"{g}_{h}_{i}" for i in range(d))
        return cls(vertices, spaces)

    def __eq__(self, other):
        return isinstance(other, KQuiver) and self.vertices == other.vertices and self.spaces == other.spaces

    def __repr__(self):
        total = sum(len(v) for v in self.spaces.values())
        return f"KQuiver({len(self.vertices)} vertices, total arrow dim {total})"

    def dim(self, g, h) -> int:
        return len(self.spaces.get((g, h), ()))

    def basis(self, g, h):
        return self.spaces.get((g, h), ())

    def pair_of(self, name):
        return self._pair_of_name[name]

    def arrow_items(self):
        out = []
        for (g, h), names in self.spaces.items():
            for n in names:
                out.append((n, g, h))
        return out

    def total_arrow_dim(self) -> int:
        return sum(len(v) for v in self.spaces.values())


def to_kquiver(q: Quiver) -> KQuiver:
    """The arrows-to-based-spaces functor: basis of (g,h) is the arrows g -> h."""
    spaces: dict = {}
    for name, src, tgt in q.arrows:
        spaces.setdefault((src, tgt), []).append(name)
    return KQuiver(q.vertices, {k: tuple(v) for k, v in spaces.items()})


def enumerate_paths(q, d: int, limit: int | None = None) -> list[Path]:
    """All paths of length <= d, sorted by (length, name tuple).

    Stationary paths come first, in vertex order.  Works for a Quiver or
    a KQuiver (chains of arrow-space basis vectors).  A limit aborts the
    enumeration as soon as more than `limit` paths exist.
    """
    if d < 0:
        raise InputError("path length bound must be >= 0")
    arrows = q.arrow_items()
    by_source = {}
    for name, src, tgt in arrows:
        by_source.setdefault(src, []).append((name, src, tgt))
    out = [Path.stationary(v) for v in q.vertices]
    layer = list(out)
    for _ in range(d):
        nxt = []
        for w in layer:
            for name, src, tgt in by_source.get(w.target, ()):
                nxt.append(Path(w.source, tgt, (name,) + w.names, (tgt,) + w.vertices))
        nxt.sort(key=lambda p: p.names)
        out.extend(nxt)
        if limit is not None and len(out) > limit:
            raise InputError(f"more than {limit} paths of length <= {d}")
        layer = nxt
        if not layer:
            break
    return out


def path_labels(kq, paths) -> list[str]:
    """Stable display labels for a path basis: compact join when unambiguous,
    dotted otherwise."""
    compact = [f"e{p.source}" if p.length == 0 else "".join(p.names) for p in paths]
    if len(set(compact)) == len(compact):
        return compact
    safe = [f"e[{p.source}]" if p.length == 0 else ".".join(p.names) for p in paths]
    if len(set(safe)) != len(safe):
        raise InputError("cannot derive unique path labels from arrow names")
    return safe


class KQuiverMap:
    """Map of k-quivers: a vertex function plus one matrix per vertex pair.

    blocks[(g, h)] maps the (g, h) arrow space of the source into the
    (phi(g), phi(h)) arrow space of the target; omitted blocks are zero.
    """

    __slots__ = ("source", "target", "vertex_map", "blocks", "field")

    def __init__(self, source: KQuiver, target: KQuiver, vertex_map, blocks, field):
        self.source = source
        self.target = target
        self.field = field
        vm = {str(k): str(v) for k, v in vertex_map.items()}
        for g in source.vertices:
            if g not in vm:
                raise InputError(f"vertex map misses {g!r}")
            if vm[g] not in set(target.vertices):
                raise InputError(f"vertex map sends {g!r} outside the target")
        self.vertex_map = vm
        cleaned = {}
        for (g, h), mat in blocks.items():
            expected = (target.dim(vm[g], vm[h]), source.dim(g, h))
            if (mat.nrows, mat.ncols) != expected:
                raise ShapeError(f"block ({g},{h}) has shape {(mat.nrows, mat.ncols)}, expected {expected}")
            same_field(field, mat.field)
            cleaned[(g, h)] = mat
        self.blocks = cleaned

    @classmethod
    def identity(cls, kq: KQuiver, field) -> "KQuiverMap":
        blocks = {pair: Mat.identity(field, len(names)) for pair, names in kq.spaces.items()}
        return cls(kq, kq, {v: v for v in kq.vertices}, blocks, field)

    def block(self, g, h) -> Mat:
        pair = (g, h)
        if pair in self.blocks:
            return self.blocks[pair]
        rows = self.target.dim(self.vertex_map[g], self.vertex_map[h])
        return Mat.zeros(self.field, rows, self.source.dim(g, h))

    def __eq__(self, other):
        if not isinstance(other, KQuiverMap):
            return False
        if self.source != other.source or self.target != other.target or self.vertex_map != other.vertex_map:
            return False
        pairs = set(self.blocks) | set(other.blocks)
        return all(self.block(*p) == other.block(*p) for p in pairs)

    def __repr__(self):
        return f"KQuiverMap({self.source!r} -> {self.target!r})"


def compose_kmaps(f: KQuiverMap, g: KQuiverMap) -> KQuiverMap:
    """f after g."""
    if g.target != f.source:
        raise ShapeError("k-quiver maps not composable")
    same_field(f.field, g.field)
    vm = {v: f.vertex_map[g.vertex_map[v]] for v in g.source.vertices}
    blocks = {}
    for (a, b), names in g.source.spaces.items():
        ga, gb = g.vertex_map[a], g.vertex_map[b]
        blk = f.block(ga, gb).mul(g.block(a, b))
        if not blk.is_zero():
            blocks[(a, b)] = blk
    return KQuiverMap(g.source, f.target, vm, blocks, f.field)


def kmap_is_iso(f: KQuiverMap) -> bool:
    vm = f.vertex_map
    if len(set(vm.values())) != len(f.source.vertices) or set(vm.values()) != set(f.target.vertices):
        return False
    pairs = set(f.source.spaces)
    pairs |= {
        (g, h)
        for g in f.source.vertices
        for h in f.source.vertices
        if f.target.dim(vm[g], vm[h]) > 0
    }
    for g, h in pairs:
        blk = f.block(g, h)
        if blk.nrows != blk.ncols or not blk.is_invertible():
            return False
    return True


def invert_kmap(f: KQuiverMap) -> KQuiverMap:
    if not kmap_is_iso(f):
        raise ShapeError("k-quiver map is not an isomorphism")
    vm_inv = {w: v for v, w in f.vertex_map.items()}
    blocks = {}
    for (g, h), blk in f.blocks.items():
        if blk.nrows:
            blocks[(f.vertex_map[g], f.vertex_map[h])] = blk.inverse()
    return KQuiverMap(f.target, f.source, vm_inv, blocks, f.field)
