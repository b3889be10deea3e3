"""Triangulated surfaces, their small-vertex quivers and matrix bundles.

A surface is a list of triangular faces glued along edge slots.  Each face
carries barycentric coordinates (i, j, k), i+j+k = n, with corners
c1 = (n,0,0), c2 = (0,n,0), c3 = (0,0,n); slot s runs from corner s to
corner s%3+1, and gluings identify slot parameters t <-> n-t (orientation
reversing, so the glued surface is oriented).

From the subdivision quiver we build the matrices Q (signed adjacency,
half-integer, stored doubled), H (boundary-corrected), K = n * H^-1,
P = 2 K Q K^T and Pi = P / n, verifying the defining identities exactly.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .torus import SkewForm


class InvalidSurface(ValueError):
    pass


def _rotate(coords, corner):
    """Barycentric coords relative to (corner, corner+1, corner+2)."""
    a, b, c = coords
    if corner == 1:
        return (a, b, c)
    if corner == 2:
        return (b, c, a)
    return (c, a, b)


def _slot_point(slot, t, n):
    """Coordinates of the parameter-t vertex on a slot (t = 1..n-1)."""
    if slot == 1:
        return (n - t, t, 0)
    if slot == 2:
        return (0, n - t, t)
    return (t, 0, n - t)


def _slot_of(coords):
    """(slot, param) if the point is on an edge but not a corner."""
    a, b, c = coords
    if c == 0 and a and b:
        return 1, b
    if a == 0 and b and c:
        return 2, c
    if b == 0 and a and c:
        return 3, a
    return None


_SLOT_START = {1: 1, 2: 2, 3: 3}
_SLOT_END = {1: 2, 2: 3, 3: 1}


class TriangulationSpec:
    """Combinatorics of an n-triangulated surface.

    gluings: list of ((face, slot), (face, slot)) pairs; unglued slots are
    boundary edges.  Self-gluings of a single face are rejected (these are
    the self-folded triangles).
    """

    def __init__(self, n, num_faces, gluings, name=""):
        if n < 2:
            raise InvalidSurface("need n >= 2")
        if num_faces < 1:
            raise InvalidSurface("need at least one face")
        self.n = n
        self.num_faces = num_faces
        self.name = name
        self.glued = {}
        norm = []
        for pair in gluings:
            (f1, s1), (f2, s2) = pair
            a, b = (f1, s1), (f2, s2)
            for f, s in (a, b):
                if not (0 <= f < num_faces and s in (1, 2, 3)):
                    raise InvalidSurface("bad slot %r" % ((f, s),))
                if (f, s) in self.glued:
                    raise InvalidSurface("slot %r glued twice" % ((f, s),))
            if f1 == f2:
                raise InvalidSurface("self-folded triangle at face %d" % f1)
            self.glued[a] = b
            self.glued[b] = a
            norm.append((a, b))
        self.gluings = norm

    def is_boundary_slot(self, face, slot):
        return (face, slot) not in self.glued

    def boundary_slots(self):
        return [
            (f, s)
            for f in range(self.num_faces)
            for s in (1, 2, 3)
            if self.is_boundary_slot(f, s)
        ]

    # -- vertex classes -------------------------------------------------

    def face_points(self, face):
        n = self.n
        pts = []
        for i in range(n + 1):
            for j in range(n + 1 - i):
                k = n - i - j
                if (i, j, k) in ((n, 0, 0), (0, n, 0), (0, 0, n)):
                    continue
                pts.append((face, (i, j, k)))
        return pts

    def glue_image(self, rep):
        """Representatives identified with ``rep`` across one gluing."""
        face, coords = rep
        loc = _slot_of(coords)
        if loc is None:
            return []
        slot, t = loc
        other = self.glued.get((face, slot))
        if other is None:
            return []
        f2, s2 = other
        return [(f2, _slot_point(s2, self.n - t, self.n))]

    def vertex_classes(self):
        """List of equivalence classes of small vertices, canonically sorted."""
        parent = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)

        reps = []
        for f in range(self.num_faces):
            reps.extend(self.face_points(f))
        for r in reps:
            parent.setdefault(r, r)
        for r in reps:
            for img in self.glue_image(r):
                union(r, img)
        classes = {}
        for r in reps:
            classes.setdefault(find(r), []).append(r)
        return [sorted(classes[key]) for key in sorted(classes)]

    # -- punctures --------------------------------------------------------

    def corner_puncture_classes(self):
        """Equivalence classes of (face, corner) under the gluings."""
        parent = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        corners = [(f, c) for f in range(self.num_faces) for c in (1, 2, 3)]
        for x in corners:
            parent[x] = x
        for (f1, s1), (f2, s2) in self.gluings:
            # start of one slot matches the end of the other
            a = (f1, _SLOT_START[s1])
            b = (f2, _SLOT_END[s2])
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
            a = (f1, _SLOT_END[s1])
            b = (f2, _SLOT_START[s2])
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        out = {}
        for x in corners:
            out.setdefault(find(x), []).append(x)
        return list(out.values())

    def interior_punctures(self):
        """Puncture classes all of whose adjacent slots are glued."""
        bad = []
        for cls in self.corner_puncture_classes():
            on_boundary = False
            for f, c in cls:
                prev = 3 if c == 1 else c - 1
                if self.is_boundary_slot(f, c) or self.is_boundary_slot(f, prev):
                    on_boundary = True
                    break
            if not on_boundary:
                bad.append(cls)
        return bad


def _exact_inverse_times_n(h, n):
    """n * H^-1 over the rationals, asserting an integer result."""
    size = h.shape[0]
    m = [[Fraction(int(h[i][j])) for j in range(size)] for i in range(size)]
    inv = [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]
    for col in range(size):
        piv = next((r for r in range(col, size) if m[r][col]), None)
        if piv is None:
            raise InvalidSurface("H matrix is singular")
        m[col], m[piv] = m[piv], m[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        d = m[col][col]
        m[col] = [x / d for x in m[col]]
        inv[col] = [x / d for x in inv[col]]
        for r in range(size):
            if r != col and m[r][col]:
                factor = m[r][col]
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
                inv[r] = [x - factor * y for x, y in zip(inv[r], inv[col])]
    out = np.zeros((size, size), dtype=np.int64)
    for i in range(size):
        for j in range(size):
            v = n * inv[i][j]
            if v.denominator != 1:
                raise InvalidSurface("n * H^-1 is not integral")
            out[i][j] = int(v)
    return out


class SurfaceBundle:
    """Vertex set and the matrix quintuple (Q, H, K, P, Pi) of a spec."""

    def __init__(self, spec):
        if spec.interior_punctures():
            raise InvalidSurface("surface has an interior puncture")
        self.spec = spec
        self.n = spec.n
        self.classes = spec.vertex_classes()
        self.ids = [cls[0] for cls in self.classes]
        self.id_index = {v: i for i, v in enumerate(self.ids)}
        self.rep_to_id = {}
        for cls in self.classes:
            for rep in cls:
                self.rep_to_id[rep] = cls[0]
        size = len(self.ids)

        boundary = set()
        for f, s in spec.boundary_slots():
            for t in range(1, self.n):
                boundary.add(self.rep_to_id[(f, _slot_point(s, t, self.n))])
        self.boundary_vertices = boundary
        self.interior_vertices = [v for v in self.ids if v not in boundary]

        self.Q2 = self._build_q2()
        self.H = self._build_h()
        self.K = _exact_inverse_times_n(self.H, self.n)
        self.P = self.K @ self.Q2 @ self.K.T  # equals 2 K Q K^T
        if (self.P % self.n).any():
            raise InvalidSurface("P has an entry outside nZ")
        self.Pi = self.P // self.n
        self._verify()

        label = spec.name or "surface"
        self.z_form = SkewForm(self.ids, self.Q2, name="Z(%s,n=%d)" % (label, self.n))
        self.a_form = SkewForm(self.ids, self.P, name="A(%s,n=%d)" % (label, self.n))

    # -- matrix construction ---------------------------------------------

    def _arrows(self, face):
        """Directed small edges of one face with doubled weights.

        Boundary arrows follow the slot directions; interior arrows are
        parallel to them.  Edges adjacent to a face corner are dropped.
        """
        n = self.n
        corners = {(n, 0, 0), (0, n, 0), (0, 0, n)}
        out = []
        for i in range(n):
            for j in range(n - i):
                k = n - 1 - i - j
                triples = [
                    ((i + 1, j, k), (i, j + 1, k), k),
                    ((i, j + 1, k), (i, j, k + 1), i),
                    ((i, j, k + 1), (i + 1, j, k), j),
                ]
                for src, dst, off in triples:
                    if src in corners or dst in corners:
                        continue
                    out.append(((face, src), (face, dst), 1 if off == 0 else 2))
        return out

    def _build_q2(self):
        size = len(self.ids)
        a2 = np.zeros((size, size), dtype=np.int64)
        for f in range(self.spec.num_faces):
            for src, dst, w2 in self._arrows(f):
                a2[self.id_index[self.rep_to_id[src]]][
                    self.id_index[self.rep_to_id[dst]]
                ] += w2
        return a2 - a2.T

    def _build_h(self):
        h2 = self.Q2.copy()
        for f, s in self.spec.boundary_slots():
            vs = [
                self.id_index[self.rep_to_id[(f, _slot_point(s, t, self.n))]]
                for t in range(1, self.n)
            ]
            for a in vs:
                for b in vs:
                    h2[a][b] = 0
            for a in vs:
                h2[a][a] = 2
            for t in range(len(vs) - 1):
                # boundary arrows point from parameter t to t+1
                h2[vs[t + 1]][vs[t]] = -2
        if (h2 % 2).any():
            raise InvalidSurface("H has a half-integer entry off the boundary")
        return h2 // 2

    def _verify(self):
        n, size = self.n, len(self.ids)
        ident = np.eye(size, dtype=np.int64)
        if (self.H @ self.K != n * ident).any():
            raise InvalidSurface("H K != n I")
        if (self.P != -self.P.T).any() or (self.Pi != -self.Pi.T).any():
            raise InvalidSurface("P or Pi not antisymmetric")
        prod = self.Q2.T @ self.Pi
        for v in self.interior_vertices:
            u = self.id_index[v]
            row = prod[u].copy()
            row[u] -= 4 * n
            if row.any():
                raise InvalidSurface("compatibility sum Q(k,u) Pi(k,v) failed")

    # -- lookup helpers -----------------------------------------------------

    def vertex(self, face, coords):
        return self.rep_to_id[(face, tuple(coords))]

    def vertex_index(self, face, coords):
        return self.id_index[self.vertex(face, coords)]

    def is_interior(self, vid):
        return vid not in self.boundary_vertices

    def mutable_indices(self):
        return [self.id_index[v] for v in self.interior_vertices]

    def triangle_formula_pairs(self):
        """Pairs where the closed-form K entry of a single triangle applies."""
        assert self.spec.num_faces == 1
        out = []
        for v in self.ids:
            for w in self.ids:
                for rot in (1, 2, 3):
                    i, j, k = _rotate(v[1], rot)
                    i2, j2, k2 = _rotate(w[1], rot)
                    if i2 <= i and j2 >= j:
                        out.append((v, w, j * k2 + k * i2 + i2 * j))
                        break
        return out


# -- named specs -----------------------------------------------------------


def named_spec(name, n):
    """Built-in surfaces: P3, P4, P4-flipped, P5, annulus."""
    if name == "P3":
        return TriangulationSpec(n, 1, [], name="P3")
    if name == "P4":
        return TriangulationSpec(n, 2, [((0, 1), (1, 1))], name="P4")
    if name == "P4-flipped":
        spec, _, _, _ = flip_data(named_spec("P4", n), ((0, 1), (1, 1)))
        spec.name = "P4-flipped"
        return spec
    if name == "P5":
        return TriangulationSpec(
            n, 3, [((0, 3), (1, 1)), ((1, 3), (2, 1))], name="P5"
        )
    if name == "annulus":
        return TriangulationSpec(
            n, 2, [((0, 1), (1, 1)), ((0, 2), (1, 2))], name="annulus"
        )
    raise InvalidSurface("unknown surface %r" % name)


NAMED_SURFACES = ("P3", "P4", "P4-flipped", "P5", "annulus")


# -- flips -----------------------------------------------------------------


def flip_data(spec, edge):
    """Flip the interior edge ``edge`` = ((f0,s0),(f1,s1)).

    Returns (flipped_spec, vertex_map, sequence, grid) where vertex_map
    sends old vertex ids to new ones, sequence is the staged mutation
    sequence realizing the flip (old ids, length (n^3-n)/6), and grid maps
    square coordinates to old ids for reporting.
    """
    (f0, s0), (f1, s1) = edge
    if spec.glued.get((f0, s0)) != (f1, s1):
        raise InvalidSurface("edge is not an interior edge of the spec")
    n = spec.n

    # flipped spec: replace faces f0, f1 by the two wedges of the square
    # cut along the other diagonal; outer slots keep their geometric sides.
    slot_map = {
        (f0, s0 % 3 + 1): (f0, 3),  # side [S,W] -> lower wedge slot 3
        (f0, (s0 + 1) % 3 + 1): (f1, 2),  # side [W,N] -> upper wedge slot 2
        (f1, s1 % 3 + 1): (f1, 3),  # side [N,E] -> upper wedge slot 3
        (f1, (s1 + 1) % 3 + 1): (f0, 2),  # side [E,S] -> lower wedge slot 2
    }
    new_gluings = [((f0, 1), (f1, 1))]
    for (a, b) in spec.gluings:
        if (a, b) in (((f0, s0), (f1, s1)), ((f1, s1), (f0, s0))):
            continue
        na = slot_map.get(a, a)
        nb = slot_map.get(b, b)
        new_gluings.append((na, nb))
    flipped = TriangulationSpec(n, spec.num_faces, new_gluings, name=spec.name + "'")

    def old_rep_of_xy(x, y):
        if x <= y:
            coords = _rotate((x, n - y, y - x), {1: 1, 2: 3, 3: 2}[s0])
            return (f0, coords)
        coords = _rotate((n - x, y, x - y), {1: 1, 2: 3, 3: 2}[s1])
        return (f1, coords)

    def new_rep_of_xy(x, y):
        # lower wedge (W,E,S): (a,b,c) -> (b, a); upper (E,W,N): (a+c, b+c)
        if x + y <= n:
            return (f0, (y, x, n - x - y))
        return (f1, (n - y, n - x, x + y - n))

    old_bundle = SurfaceBundle(spec)
    new_bundle = SurfaceBundle(flipped)

    vertex_map = {}
    grid = {}
    for vid, reps in zip(old_bundle.ids, old_bundle.classes):
        mapped = None
        for face, coords in reps:
            if face not in (f0, f1):
                mapped = new_bundle.rep_to_id[(face, coords)]
                break
        if mapped is None:
            face, coords = reps[0]
            if face == f0:
                a, b, c = _rotate(coords, s0)
                x, y = (a, a + c)
            else:
                a, b, c = _rotate(coords, s1)
                x, y = (n - a, b)
            grid[(x, y)] = vid
            mapped = new_bundle.rep_to_id[new_rep_of_xy(x, y)]
        vertex_map[vid] = mapped

    # staged grids: round i mutates the lattice diagonals at distance
    # <= i from the cut edge (same parity), sweeping outward; round 0 is
    # the n-1 vertices on the edge itself.
    sequence = []
    for i in range(n - 1):
        stage = []
        for x in range(1, n):
            for y in range(1, n):
                dv, dh = abs(x - y), abs(x + y - n)
                if (
                    dv <= i
                    and (dv - i) % 2 == 0
                    and dh <= n - 2 - i
                    and (dh - (n - 2 - i)) % 2 == 0
                ):
                    stage.append((x, y))
        for x, y in sorted(stage):
            sequence.append(old_bundle.rep_to_id[old_rep_of_xy(x, y)])
    return flipped, vertex_map, sequence, grid


def flip_sequence(spec, edge):
    """Just the staged mutation sequence for a flip (old vertex ids)."""
    return flip_data(spec, edge)[2]


# -- cutting ----------------------------------------------------------------


def cut(spec, edge):
    """Cut along an interior edge; return (new_spec, correspondence).

    correspondence maps each old vertex id to the tuple of new vertex ids
    lying over it (two for the split vertices, one otherwise).
    """
    (f0, s0), (f1, s1) = edge
    if spec.glued.get((f0, s0)) != (f1, s1):
        raise InvalidSurface("edge is not an interior edge of the spec")
    remaining = [
        g
        for g in spec.gluings
        if g not in (((f0, s0), (f1, s1)), ((f1, s1), (f0, s0)))
    ]
    new_spec = TriangulationSpec(
        spec.n, spec.num_faces, remaining, name=spec.name + "|cut"
    )
    old_b = SurfaceBundle(spec)
    new_b = SurfaceBundle(new_spec)
    corr = {}
    for vid, cls in zip(old_b.ids, old_b.classes):
        images = sorted({new_b.rep_to_id[rep] for rep in cls})
        corr[vid] = tuple(images)
    return new_spec, corr
