"""Dual networks on triangulated polygons and path-sum traces.

The dual graph of an n-subdivided triangle, oriented toward a chosen
corner, carries n sources on one adjacent edge and n sinks on the other;
monotone paths between them index the Laurent expansion of the stated
corner arcs.  Each path contributes Z^(n k - k0) where k marks the small
vertices lying to the path's left and k0 is the sum of the diagonal-path
markings.  Left regions are computed with exact integer plane geometry.

The same machinery produces the reversed-arc sums (through the mirrored
network) and the corner sums of the quadrilateral (two triangle networks
chained across the diagonal).
"""

from __future__ import annotations

from math import comb

import numpy as np

from .torus import ExponentLinearMap, TorusElement, weyl_bracket


# -- exact plane geometry -----------------------------------------------------


def _point_in_polygon(p, polygon):
    """Even-odd rule with integer coordinates; p must avoid the edges."""
    px, py = p
    inside = False
    m = len(polygon)
    for idx in range(m):
        x1, y1 = polygon[idx]
        x2, y2 = polygon[(idx + 1) % m]
        if (y1 > py) != (y2 > py):
            # x-coordinate of the crossing, compared to px exactly
            lhs = (x1 - px) * (y2 - y1) + (x2 - x1) * (py - y1)
            if (lhs > 0) == (y2 > y1):
                inside = not inside
        elif y1 == py == y2:
            lo, hi = (x1, x2) if x1 <= x2 else (x2, x1)
            if lo <= px <= hi:
                raise ValueError("query point lies on the polygon")
    return inside


def _on_segment(p, a, b):
    cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
    if cross:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[
        1
    ] <= max(a[1], b[1])


def left_region(polyline, loop_ccw, queries):
    """Vertices (point -> key) lying strictly left of the directed polyline.

    The polyline runs from boundary to boundary of the disk whose boundary
    is ``loop_ccw`` (counterclockwise corner list).  The left region is
    enclosed by the path followed by the counterclockwise return arc; the
    return arc is bulged outward so boundary vertices on it count as
    inside.
    """
    start, end = polyline[0], polyline[-1]
    g = (
        sum(p[0] for p in loop_ccw),
        sum(p[1] for p in loop_ccw),
    )
    m = len(loop_ccw)

    def push(p):
        # double the distance from the loop centroid (scaled by m to stay
        # integral): p + (p - G/m) * 1  ->  use coordinates times m
        return (2 * m * p[0] - g[0], 2 * m * p[1] - g[1])

    def seg_of(p):
        for idx in range(m):
            if _on_segment(p, loop_ccw[idx], loop_ccw[(idx + 1) % m]):
                return idx
        raise ValueError("point not on the boundary loop")

    i_end = seg_of(end)
    i_start = seg_of(start)
    arc = [push(end)]
    idx = i_end
    if i_end == i_start:
        # same side: if start comes later in ccw direction, go directly
        a, b = loop_ccw[idx], loop_ccw[(idx + 1) % m]
        d_end = abs(end[0] - a[0]) + abs(end[1] - a[1])
        d_start = abs(start[0] - a[0]) + abs(start[1] - a[1])
        if d_start < d_end:
            idx_stop = None  # wrap all the way around
        else:
            idx_stop = idx
    else:
        idx_stop = None
    if i_end != i_start or idx_stop is None:
        j = (i_end + 1) % m
        while True:
            arc.append(push(loop_ccw[j]))
            if j == i_start:
                break
            j = (j + 1) % m
    arc.append(push(start))
    polygon = [(m * x, m * y) for x, y in polyline] + arc
    out = set()
    for point, key in queries:
        if _point_in_polygon((m * point[0], m * point[1]), polygon):
            out.add(key)
    return out


# -- the standard corner network ----------------------------------------------


def _standard_net(n):
    """Directed dual graph of the n-subdivision in standard coordinates.

    Nodes: ('U', a, b, c), ('D', a, b, c), sources ('S', l) on the edge
    {j = 0}, sinks ('T', l) on {k = 0}, side nodes ('X', l) on {i = 0}.
    Edges carry the crossed small edge (pair of vertex coordinates).
    Flow: crossing a {k = const} edge goes U -> D (or out to a sink),
    crossing {j = const} and {i = const} edges goes D -> U (or in from a
    source / side node).
    """
    edges = []
    for a in range(n):
        for b in range(n - a):
            c = n - 1 - a - b
            u = ("U", a, b, c)
            # k-type edge of this up-triangle
            ke = ((a + 1, b, c), (a, b + 1, c))
            if c >= 1:
                edges.append((u, ("D", a + 1, b + 1, c), ke))
            else:
                edges.append((u, ("T", b + 1), ke))
            # j-type edge
            je = ((a + 1, b, c), (a, b, c + 1))
            if b >= 1:
                edges.append((("D", a + 1, b, c + 1), u, je))
            else:
                edges.append((("S", c + 1), u, je))
            # i-type edge
            ie = ((a, b + 1, c), (a, b, c + 1))
            if a >= 1:
                edges.append((("D", a, b + 1, c + 1), u, ie))
            else:
                edges.append((("X", b + 1), u, ie))
    return edges


_FRAMES = {
    1: (0, 1, 2),  # frame at corner 1: identity
    2: (2, 0, 1),  # frame (v2, v3, v1)
    3: (1, 2, 0),  # frame (v3, v1, v2)
}
MIRROR = (0, 2, 1)  # swap the two edges at corner 1


def _compose(p, q):
    return tuple(p[q[i]] for i in range(3))


def _apply(perm, coords):
    return tuple(coords[perm[i]] for i in range(3))


class CornerNet:
    """A corner network transported onto one face of a surface.

    perm maps standard coordinates to face coordinates; placement maps
    face coordinates to scaled integer plane points.
    """

    def __init__(self, n, face, perm, placement):
        self.n = n
        self.face = face
        self.perm = perm
        self.placement = placement
        self.out_edges = {}
        for src, dst, small in _standard_net(n):
            self.out_edges.setdefault(src, []).append((dst, small))

    def node_point(self, node):
        kind = node[0]
        if kind == "U":
            pts = [
                (node[1] + 1, node[2], node[3]),
                (node[1], node[2] + 1, node[3]),
                (node[1], node[2], node[3] + 1),
            ]
        elif kind == "D":
            pts = [
                (node[1] - 1, node[2], node[3]),
                (node[1], node[2] - 1, node[3]),
                (node[1], node[2], node[3] - 1),
            ]
        else:
            raise ValueError(node)
        xs = [self.placement(self.face, _apply(self.perm, p)) for p in pts]
        sx = sum(p[0] for p in xs)
        sy = sum(p[1] for p in xs)
        if sx % 3 or sy % 3:
            raise ValueError("centroid is not integral; scale the placement")
        return (sx // 3, sy // 3)

    def edge_point(self, small):
        p1 = self.placement(self.face, _apply(self.perm, small[0]))
        p2 = self.placement(self.face, _apply(self.perm, small[1]))
        if (p1[0] + p2[0]) % 2 or (p1[1] + p2[1]) % 2:
            raise ValueError("midpoint is not integral; scale the placement")
        return ((p1[0] + p2[0]) // 2, (p1[1] + p2[1]) // 2)

    def paths(self, i, j):
        """All directed paths source i -> sink j, as edge lists."""
        out = []
        stack = [(("S", i), [])]
        while stack:
            node, acc = stack.pop()
            for dst, small in self.out_edges.get(node, ()):
                step = acc + [(node, dst, small)]
                if dst == ("T", j):
                    out.append(step)
                elif dst[0] in ("T", "X", "S"):
                    continue
                else:
                    stack.append((dst, step))
        return out

    def polyline(self, path):
        pts = [self.edge_point(path[0][2])]
        for src, dst, small in path[1:]:
            pts.append(self.node_point(src))
            pts.append(self.edge_point(small))
        return pts


# -- placements and surface frames ----------------------------------------------


def p3_placement(face, coords):
    a, b, c = coords
    return (6 * c, 6 * b)


def p3_loop(n):
    return [(0, 0), (6 * n, 0), (0, 6 * n)]


def p4_placement(face, coords):
    a, b, c = coords
    if face == 0:
        return (6 * b, -6 * c)
    return (6 * (a + c), 6 * c)


def p4_loop(n):
    return [(0, -6 * n), (6 * n, 0), (6 * n, 6 * n), (0, 0)]


class PathFamily:
    """Left-marking vectors of paths drawn on an embedded surface."""

    def __init__(self, bundle, placement, loop):
        self.bundle = bundle
        self.placement = placement
        self.loop = loop
        self.queries = [
            (placement(rep[0], rep[1]), vid)
            for vid, cls in zip(bundle.ids, bundle.classes)
            for rep in cls[:1]
        ]

    def left_vector(self, polyline):
        found = left_region(polyline, self.loop, self.queries)
        vec = np.zeros(len(self.bundle.ids), dtype=np.int64)
        for vid in found:
            vec[self.bundle.id_index[vid]] = 1
        return vec


def _trace_sum(bundle, path_polylines, family, base_vector):
    n = bundle.n
    out = TorusElement.zero(bundle.z_form)
    for poly in path_polylines:
        k = family.left_vector(poly)
        expo = tuple(int(x) for x in (n * k - base_vector))
        out = out + TorusElement.monomial(bundle.z_form, expo)
    return out


class TriangleTraces:
    """Path-sum traces of the corner arcs of a standalone triangle."""

    def __init__(self, bundle, face=0, placement=p3_placement, loop=None):
        self.bundle = bundle
        self.n = bundle.n
        self.placement = placement
        self.loop = loop or p3_loop(self.n)
        self.net = CornerNet(self.n, face, _FRAMES[1], placement)
        self.mirror_net = CornerNet(self.n, face, MIRROR, placement)
        self.family = PathFamily(bundle, placement, self.loop)
        self._base = None
        self._base_mirror = None

    def paths(self, i, j):
        return self.net.paths(i, j)

    def path_count(self, i, j):
        return len(self.net.paths(i, j))

    def base_vector(self):
        """Sum of the diagonal-path left markings; equals the first
        barycentric coordinate function."""
        if self._base is None:
            total = np.zeros(len(self.bundle.ids), dtype=np.int64)
            for i in range(1, self.n + 1):
                (path,) = self.net.paths(i, i)
                total += self.family.left_vector(self.net.polyline(path))
            self._base = total
        return self._base

    def base_vector_mirror(self):
        if self._base_mirror is None:
            total = np.zeros(len(self.bundle.ids), dtype=np.int64)
            for i in range(1, self.n + 1):
                (path,) = self.mirror_net.paths(i, i)
                total += self.family.left_vector(self.mirror_net.polyline(path))
            self._base_mirror = total
        return self._base_mirror

    def corner_trace_z(self, i, j):
        """Trace of the counterclockwise corner arc with states (i, j)."""
        polys = [self.net.polyline(p) for p in self.net.paths(i, j)]
        return _trace_sum(self.bundle, polys, self.family, self.base_vector())

    def corner_trace_z_reversed(self, i, j):
        """Trace of the orientation-reversed corner arc with states (i, j).

        Runs through the mirrored network from source n+1-j to sink
        n+1-i; the mirrored diagonal paths fix the base marking.
        """
        paths = self.mirror_net.paths(self.n + 1 - j, self.n + 1 - i)
        polys = [self.mirror_net.polyline(p) for p in paths]
        return _trace_sum(
            self.bundle, polys, self.family, self.base_vector_mirror()
        )

    def to_a_torus(self):
        b = self.bundle
        return ExponentLinearMap(b.z_form, b.a_form, b.H, denom=b.n)

    def corner_trace_a(self, i, j):
        return self.to_a_torus()(self.corner_trace_z(i, j))

    def corner_trace_a_reversed(self, i, j):
        return self.to_a_torus()(self.corner_trace_z_reversed(i, j))


class QuadrilateralTraces:
    """Path-sum traces for the three corner arcs of the quadrilateral.

    Arc 'a' turns around the face-0 corner off the diagonal, arc 'c'
    around the face-1 corner off the diagonal, and arc 'b' around a
    diagonal endpoint, chaining the two triangle networks across it.
    """

    def __init__(self, bundle):
        self.bundle = bundle
        self.n = bundle.n
        self.loop = p4_loop(self.n)
        self.net_a = CornerNet(self.n, 0, _FRAMES[3], p4_placement)
        self.net_c = CornerNet(self.n, 1, _FRAMES[3], p4_placement)
        self.net_b1 = CornerNet(self.n, 0, _FRAMES[1], p4_placement)
        self.net_b2 = CornerNet(self.n, 1, _FRAMES[2], p4_placement)
        self.family = PathFamily(bundle, p4_placement, self.loop)
        self._bases = {}

    def paths(self, arc, i, j):
        if arc == "a":
            return [self.net_a.polyline(p) for p in self.net_a.paths(i, j)]
        if arc == "c":
            return [self.net_c.polyline(p) for p in self.net_c.paths(i, j)]
        if arc != "b":
            raise ValueError("arc must be one of a, b, c")
        out = []
        for mid in range(1, self.n + 1):
            lefts = self.net_b1.paths(i, mid)
            rights = self.net_b2.paths(mid, j)
            for lp in lefts:
                for rp in rights:
                    out.append(
                        self.net_b1.polyline(lp) + self.net_b2.polyline(rp)
                    )
        return out

    def path_count(self, arc, i, j):
        return len(self.paths(arc, i, j))

    def base_vector(self, arc):
        if arc not in self._bases:
            total = np.zeros(len(self.bundle.ids), dtype=np.int64)
            for i in range(1, self.n + 1):
                (poly,) = self.paths(arc, i, i)
                total += self.family.left_vector(poly)
            self._bases[arc] = total
        return self._bases[arc]

    def trace_z(self, arc, i, j):
        return _trace_sum(
            self.bundle, self.paths(arc, i, j), self.family, self.base_vector(arc)
        )

    def to_a_torus(self):
        b = self.bundle
        return ExponentLinearMap(b.z_form, b.a_form, b.H, denom=b.n)


def binomial_path_count(n, i, j):
    """The closed-form count of corner paths: C(i-1, j-1)."""
    if j > i:
        return 0
    return comb(i - 1, j - 1)


# -- vertex labels and cluster formulas -------------------------------------------


class PolygonLabels:
    """The two standard labelings of triangle vertices inside a surface.

    v(i, j) is the vertex (n-i, j, i-j) of ``face`` (0 <= j <= i <= n),
    vbar(i, j) the vertex (i, n-j, j-i) of ``bar_face`` (0 <= i <= j <= n);
    the three corner labels of each system denote the unit and map to
    None.
    """

    def __init__(self, bundle, face=0, bar_face=None):
        self.bundle = bundle
        self.n = bundle.n
        self.face = face
        self.bar_face = face if bar_face is None else bar_face

    def v(self, i, j):
        n = self.n
        if not (0 <= j <= i <= n):
            raise ValueError("bad label v[%d,%d]" % (i, j))
        if (i, j) in ((0, 0), (n, 0), (n, n)):
            return None
        return self.bundle.vertex_index(self.face, (n - i, j, i - j))

    def vbar(self, i, j):
        n = self.n
        if not (0 <= i <= j <= n):
            raise ValueError("bad label vbar[%d,%d]" % (i, j))
        if (i, j) in ((0, 0), (0, n), (n, n)):
            return None
        return self.bundle.vertex_index(self.bar_face, (i, n - j, j - i))

    def resolve(self, label):
        kind, i, j = label
        return self.v(i, j) if kind == "v" else self.vbar(i, j)


def mu_group(k, j):
    """mu_(k;j): mutations at v_k1, ..., v_kj applied left to right."""
    return [("v", k, t) for t in range(1, j + 1)]


def mubar_group(k, t):
    """mubar_(k;t): mutations at vbar_{k,k+t}, ..., vbar_{k,k+1}."""
    return [("vbar", k, k + s) for s in range(t, 0, -1)]


def seq_c(i, j):
    """Mutation labels computing the corner-arc variable for 1 < j < i."""
    seq = []
    for k in range(i - 1, j - 1, -1):
        seq.extend(mu_group(k, j - 1))
    return seq


def seq_cbar(n, i, j):
    seq = []
    for k in range(i - 1, j - 1, -1):
        seq.extend(mubar_group(k, n - i))
    return seq


def seq_diamond(i, j):
    """mu-diamond_(i;j-1) of the quadrilateral case."""
    seq = []
    for k in range(i - 1, j - 1, -1):
        seq.extend(mu_group(k, j - 1))
    for k in range(j - 1, 1, -1):
        seq.extend(mu_group(k, k - 1))
    return seq


def seq_bar_diamond(n, j):
    """mubar-diamond_j of the quadrilateral case."""
    seq = []
    for k in range(j - 1, 0, -1):
        seq.extend(mubar_group(k, n - j))
    return seq


def _run(seed, labels, seq):
    return seed.mutate_sequence([labels.resolve(lab) for lab in seq])


def _gen(seed, idx, power=1):
    return TorusElement.generator(seed.form, seed.form.vertices[idx], power)


def _bracket_with_frozen(seed, x, frozen_indices_powers):
    factors = [x]
    for idx, power in frozen_indices_powers:
        if idx is None:
            continue
        factors.append(_gen(seed, idx, power))
    return weyl_bracket(factors)


def cluster_formula_c(seed, labels, i, j):
    """The corner arc as a cluster expression, all three label ranges."""
    if not (1 <= j <= i <= labels.n):
        raise ValueError("need 1 <= j <= i <= n")
    if j == 1:
        x = _gen(seed, labels.v(i, 1))
        return _bracket_with_frozen(
            seed, x, [(labels.v(i, 0), -1), (labels.v(1, 1), -1)]
        )
    if j == i:
        factors = []
        if labels.v(i, 0) is not None:
            factors.append((labels.v(i, 0), -1))
        if labels.v(i - 1, 0) is not None:
            factors.append((labels.v(i - 1, 0), 1))
        x = TorusElement.one(seed.form)
        return _bracket_with_frozen(seed, x, factors)
    mutated = _run(seed, labels, seq_c(i, j))
    x = mutated.vars[labels.v(j, j - 1)]
    return _bracket_with_frozen(
        seed, x, [(labels.v(i, 0), -1), (labels.v(j, j), -1)]
    )


def cluster_formula_cbar(seed, labels, i, j):
    """The reversed corner arc as a cluster expression."""
    n = labels.n
    if not (1 <= j <= i <= n):
        raise ValueError("need 1 <= j <= i <= n")
    if i == n:
        factors = [(labels.vbar(j, j), -1), (labels.vbar(j - 1, j), 1)]
        return _bracket_with_frozen(seed, TorusElement.one(seed.form), factors)
    if i == j:
        factors = [(labels.vbar(i, n), -1), (labels.vbar(i - 1, n), 1)]
        return _bracket_with_frozen(seed, TorusElement.one(seed.form), factors)
    mutated = _run(seed, labels, seq_cbar(n, i, j))
    x = mutated.vars[labels.vbar(j, j + 1)]
    return _bracket_with_frozen(
        seed, x, [(labels.vbar(j, j), -1), (labels.vbar(i, n), -1)]
    )


def cluster_formula_d(seed, labels, i, j):
    """The essential arc of the quadrilateral as a cluster expression."""
    n = labels.n
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError("need 1 <= i, j <= n")
    if j == 1:
        x = _gen(seed, labels.v(i, 1))
        return _bracket_with_frozen(
            seed, x, [(labels.v(i, 0), -1), (labels.vbar(1, n), -1)]
        )
    if i == 1:
        if j == n:
            # degenerate corner of the mutation formula: the reversed-arc
            # factor is the base-case monomial, not an exchange variable
            x = _gen(seed, labels.vbar(0, 1))
            return _bracket_with_frozen(seed, x, [(labels.v(1, 0), -1)])
        mutated = _run(seed, labels, seq_bar_diamond(n, j))
        x = mutated.vars[labels.vbar(1, 2)]
        return _bracket_with_frozen(
            seed, x, [(labels.v(1, 0), -1), (labels.vbar(j, n), -1)]
        )
    m = min(i, j)
    seq = seq_diamond(i, m) + seq_bar_diamond(n, j)
    seq += [("v", k, k) for k in range(1, m)]
    mutated = _run(seed, labels, seq)
    x = mutated.vars[labels.v(m - 1, m - 1)]
    return _bracket_with_frozen(
        seed, x, [(labels.v(i, 0), -1), (labels.vbar(j, n), -1)]
    )


def parse_vertex_label(text):
    """Parse labels like "v31" or "vbar12" into ("v"|"vbar", i, j)."""
    text = text.strip()
    kind = "vbar" if text.startswith("vbar") else "v"
    digits = text[len(kind):]
    if len(digits) != 2 or not digits.isdigit():
        raise ValueError("cannot parse vertex label %r" % text)
    return (kind, int(digits[0]), int(digits[1]))
