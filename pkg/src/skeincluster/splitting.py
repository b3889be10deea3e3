"""Splitting homomorphisms: cutting a surface along an interior edge and
embedding its quantum tori into those of the cut surface.

The Z-torus map doubles edge variables, Z_v -> [Z_v' Z_v''].  The A-torus
map follows the left-turn fans: walking around each endpoint of the cut
edge away from it sweeps a fan of triangle corners, and the vertices at
barycentric level i in the fan frames pick up the opposite-side copy of
the i-th edge vertex.  Both maps are monomial and their multiplicativity
is exactly the matrix intertwining condition checked at construction.
"""

from __future__ import annotations

from collections import Counter

import numpy as np

from .surface import SurfaceBundle, _rotate, _slot_of, _slot_point, cut
from .torus import ExponentLinearMap, TorusElement


def _fan(spec, face, corner, entered, stop_slots):
    """Corner visits sweeping around a puncture, starting at (face, corner)
    entered through ``entered``; stops before boundary or the cut edge.
    Each visit records the slot it was entered through, so vertices on a
    shared edge of consecutive visits are not collected twice."""
    visits = []
    f, c, came = face, corner, entered
    while True:
        visits.append((f, c, came))
        start_slot, end_slot = c, (3 if c == 1 else c - 1)
        nxt = end_slot if came == start_slot else start_slot
        if spec.is_boundary_slot(f, nxt) or (f, nxt) in stop_slots:
            return visits
        g, y = spec.glued[(f, nxt)]
        if nxt == start_slot:
            f, c, came = g, (y % 3) + 1, y
        else:
            f, c, came = g, y, y
        if len(visits) > 6 * spec.num_faces + 6:
            raise RuntimeError("fan walk did not terminate")


class CutData:
    """Combinatorics of cutting along one interior edge.

    Exposes the split vertices s_1..s_{n-1} (indexed by barycentric level
    from the fan-start puncture), their two copies in the cut surface,
    the fan multisets V'_{s_i}, V''_{s_i}, the per-vertex multisets
    V1_v, V2_v, and the two splitting maps.
    """

    def __init__(self, bundle, edge):
        spec = bundle.spec
        (f0, s0), (f1, s1) = edge
        if spec.glued.get((f0, s0)) != (f1, s1):
            raise ValueError("edge is not an interior edge")
        self.bundle = bundle
        self.edge = edge
        n = bundle.n
        self.cut_spec, self.corr = cut(spec, edge)
        self.cut_bundle = SurfaceBundle(self.cut_spec)

        stop = {(f0, s0), (f1, s1)}
        # red fan around the start corner of the Delta_2 = f1 side
        red = _fan(spec, f1, s1, s1, stop)
        # blue fan around the other end, starting at the f0 side
        blue = _fan(spec, f0, s0, s0, stop)
        self.red_fan = red
        self.blue_fan = blue

        self.split_ids = [
            bundle.rep_to_id[(f1, _slot_point(s1, n - i, n))] for i in range(1, n)
        ]
        self.prime_ids = [
            self.cut_bundle.rep_to_id[(f0, _slot_point(s0, i, n))]
            for i in range(1, n)
        ]
        self.double_ids = [
            self.cut_bundle.rep_to_id[(f1, _slot_point(s1, n - i, n))]
            for i in range(1, n)
        ]

        self.v_prime = {}
        self.v_double = {}
        for lvl, sid in enumerate(self.split_ids, start=1):
            self.v_prime[sid] = self._collect(red, lvl, sid)
            self.v_double[sid] = self._collect(blue, n - lvl, sid)

        self.v1 = {vid: Counter() for vid in bundle.ids}
        self.v2 = {vid: Counter() for vid in bundle.ids}
        for sid, ms in self.v_prime.items():
            for vid, mult in ms.items():
                self.v1[vid][sid] += mult
        for sid, ms in self.v_double.items():
            for vid, mult in ms.items():
                self.v2[vid][sid] += mult

        self.split_z = self._build_map(bundle.z_form, self.cut_bundle.z_form)
        self._a_matrix = np.array(
            [self._image_row(vid) for vid in bundle.ids], dtype=np.int64
        )
        lam_src = bundle.a_form.doubled
        lam_tgt = self._a_matrix @ self.cut_bundle.a_form.doubled @ self._a_matrix.T
        self.a_map_ok = bool((lam_src == lam_tgt).all())
        self.split_a = (
            ExponentLinearMap(
                bundle.a_form, self.cut_bundle.a_form, self._a_matrix
            )
            if self.a_map_ok
            else None
        )

    def _collect(self, visits, level, skip_id):
        """Vertices at the given barycentric level along the fan curve.

        Vertices on a visit's entry edge already lie on the previous
        segment of the curve (or on the cut edge itself) and are skipped.
        """
        ms = Counter()
        rep_to_id = self.bundle.rep_to_id
        for f, c, came in visits:
            for face, coords in self.bundle.spec.face_points(f):
                if _rotate(coords, c)[0] != level:
                    continue
                loc = _slot_of(coords)
                if loc is not None and loc[0] == came:
                    continue
                vid = rep_to_id[(face, coords)]
                if vid != skip_id:
                    ms[vid] += 1
        return ms

    def _image_row(self, vid):
        new_index = self.cut_bundle.id_index
        row = np.zeros(len(self.cut_bundle.ids), dtype=np.int64)
        if vid in self.v_prime:  # a split vertex
            lvl = self.split_ids.index(vid)
            row[new_index[self.prime_ids[lvl]]] += 1
            row[new_index[self.double_ids[lvl]]] += 1
            return row
        images = self.corr[vid]
        assert len(images) == 1
        row[new_index[images[0]]] += 1
        lvl_of = {sid: t for t, sid in enumerate(self.split_ids)}
        for sid, mult in self.v1[vid].items():
            row[new_index[self.prime_ids[lvl_of[sid]]]] += mult
        for sid, mult in self.v2[vid].items():
            row[new_index[self.double_ids[lvl_of[sid]]]] += mult
        return row

    def _build_map(self, src_form, tgt_form):
        # the Z-side map only doubles the edge variables
        size = len(self.bundle.ids)
        mat = np.zeros((size, len(self.cut_bundle.ids)), dtype=np.int64)
        for i, vid in enumerate(self.bundle.ids):
            for img in self.corr[vid]:
                mat[i][self.cut_bundle.id_index[img]] += 1
        return ExponentLinearMap(src_form, tgt_form, mat)

    # -- reports ---------------------------------------------------------

    def check_conditions(self):
        """Evaluate the quasi-commutation and arrow-count conditions that
        make the A-side assignment a splitting homomorphism."""
        bundle, cutb = self.bundle, self.cut_bundle
        report = {"a": [], "b": [], "c": [], "d": []}
        mat = self._a_matrix
        lam_src = bundle.a_form.doubled
        lam_tgt = mat @ cutb.a_form.doubled @ mat.T
        split_set = set(self.split_ids)
        ids = bundle.ids
        for i, u in enumerate(ids):
            for j, v in enumerate(ids):
                if j <= i:
                    continue
                kind = ("c" if u in split_set else "a") if (
                    (u in split_set) == (v in split_set)
                ) else "b"
                if lam_src[i][j] != lam_tgt[i][j]:
                    report[kind].append((u, v, int(lam_src[i][j]), int(lam_tgt[i][j])))
        report["d"] = self._check_condition_d()
        return report

    def _check_condition_d(self):
        bundle, cutb = self.bundle, self.cut_bundle
        n = bundle.n
        q_old = bundle.Q2
        q_new = cutb.Q2
        idx = bundle.id_index
        new_idx = cutb.id_index
        failures = []
        mutts = set(bundle.interior_vertices) - set(self.split_ids)
        for lvl, sid in enumerate(self.split_ids):
            up = new_idx[self.prime_ids[lvl]]
            upp = new_idx[self.double_ids[lvl]]
            for v in mutts:
                jv = idx[v]
                jv_new = new_idx[self.corr[v][0]]

                def fan_sum(ms, positive):
                    total = 0
                    for w, mult in ms.items():
                        q = q_old[idx[w]][jv]
                        if positive and q > 0:
                            total += mult * q
                        if not positive and q < 0:
                            total += mult * (-q)
                    return total

                # both displayed identities, everything doubled
                lhs1 = max(q_new[upp][jv_new], 0) + fan_sum(self.v_prime[sid], True)
                rhs1 = max(q_new[jv_new][upp], 0) + fan_sum(self.v_prime[sid], False)
                lhs2 = max(q_new[up][jv_new], 0) + fan_sum(self.v_double[sid], True)
                rhs2 = max(q_new[jv_new][up], 0) + fan_sum(self.v_double[sid], False)
                if lhs1 != rhs1 or lhs2 != rhs2:
                    failures.append((sid, v, lhs1, rhs1, lhs2, rhs2))
        return failures

    def component_of(self):
        """Component index of every cut-surface vertex (by face reachability)."""
        spec = self.cut_spec
        comp = list(range(spec.num_faces))

        def find(x):
            while comp[x] != x:
                comp[x] = comp[comp[x]]
                x = comp[x]
            return x

        for (fa, _), (fb, _) in spec.gluings:
            ra, rb = find(fa), find(fb)
            if ra != rb:
                comp[max(ra, rb)] = min(ra, rb)
        labels = {}
        for vid, cls in zip(self.cut_bundle.ids, self.cut_bundle.classes):
            roots = {find(rep[0]) for rep in cls}
            assert len(roots) == 1
            labels[vid] = roots.pop()
        return labels


def tensor_project(cut_data, x):
    """Split a cut-torus element into per-component tensor factors.

    Returns a list of (coeff, {component: exponent tuple}) with the
    exponent of each term partitioned by connected component; raises if a
    component assignment is impossible (it never is, componentwise).
    """
    comp = cut_data.component_of()
    comps = sorted(set(comp.values()))
    ids = cut_data.cut_bundle.ids
    out = []
    for k in sorted(x.terms):
        split = {c: [0] * len(ids) for c in comps}
        for pos, e in enumerate(k):
            if e:
                split[comp[ids[pos]]][pos] = e
        out.append((x.terms[k], {c: tuple(v) for c, v in split.items()}))
    return out


def embed_component(component_bundle, cut_data, face_map):
    """Exponent maps from a standalone component bundle into the cut torus.

    face_map sends the component's face indices to cut-surface face
    indices; returns (z_map, a_map).
    """
    cutb = cut_data.cut_bundle
    size = len(component_bundle.ids)
    mat = np.zeros((size, len(cutb.ids)), dtype=np.int64)
    for i, vid in enumerate(component_bundle.ids):
        face, coords = vid
        target = cutb.rep_to_id[(face_map[face], coords)]
        mat[i][cutb.id_index[target]] = 1
    z_map = ExponentLinearMap(component_bundle.z_form, cutb.z_form, mat)
    a_map = ExponentLinearMap(component_bundle.a_form, cutb.a_form, mat)
    return z_map, a_map
