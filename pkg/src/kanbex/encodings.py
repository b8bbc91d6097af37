"""Constructors translating familiar problems into presentations.

Each constructor produces a validated nine-field record so the one
generic engine solves the original problem: monoid/category normal
forms, coset systems, right congruences, quotients of sets (plain or
equivariant), orbits and conjugacy classes, colimits of set diagrams,
and induced actions along a morphism.

Groups are written as monoids: inverse generators and invertibility
relations are included only when the caller supplies them, never
silently added.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .model import (
    Arrow,
    KanPresentation,
    Path,
    PresentationError,
    path_from_labels,
    validate_presentation,
)
from .ordering import OrderSpec, orient_pair
from .rewrite import KRule, RewriteSystem, complete, reduce_path

Word = tuple[str, ...]


@dataclass(frozen=True)
class MonoidPresentationDesc:
    """Generators and defining relations (pairs of words; () is the empty word)."""

    generators: tuple[str, ...]
    relations: tuple[tuple[Word, Word], ...] = ()


@dataclass(frozen=True)
class CosetSystemDesc:
    group_generators: tuple[str, ...]
    group_relations: tuple[tuple[Word, Word], ...]
    subgroup_words: tuple[Word, ...]
    side: str = "right"


@dataclass(frozen=True, eq=False)
class ActionDesc:
    """A monoid acting on a finite point set.

    ``action`` maps each generator to the image list, parallel to
    ``points``.
    """

    monoid: MonoidPresentationDesc
    points: tuple[str, ...]
    action: Mapping[str, tuple[str, ...]]


def _finish(pres: KanPresentation) -> KanPresentation:
    report = validate_presentation(pres)
    if not report.ok:
        raise PresentationError("encoding produced an invalid presentation: "
                                + "; ".join(report.violations))
    return pres


def _one_object_delta(desc: MonoidPresentationDesc):
    """Arrows and resolved relation paths for a one-object graph."""
    arrows = tuple(Arrow(g, 1, 1) for g in desc.generators)
    by_label = {a.label: a for a in arrows}

    def word_path(w: Sequence[str], where: str) -> Path:
        return path_from_labels(tuple(w), by_label, source=1, where=where)

    rels = tuple(
        (word_path(l, f"relation {k} lhs"), word_path(r, f"relation {k} rhs"))
        for k, (l, r) in enumerate(desc.relations, 1)
    )
    return arrows, rels, word_path


def from_monoid_presentation(desc: MonoidPresentationDesc, point: str = "e") -> KanPresentation:
    """Normal forms for a monoid: a trivial one-point action extended
    along the inclusion of the singleton into the monoid."""
    if point in desc.generators:
        raise PresentationError(f"point label {point!r} collides with a generator")
    arrows, rels, _ = _one_object_delta(desc)
    return _finish(KanPresentation(
        ob_a=(1,), arr_a=(),
        ob_b=(1,), arr_b=arrows, rel_b=rels,
        f_ob_a=(1,), f_arr_a=(),
        x_ob_a=((point,),), x_arr_a=(),
    ))


def from_category_presentation(
    objects: Sequence[int],
    arrows: Sequence[tuple[str, int, int]],
    relations: Sequence[tuple[Sequence[str], Sequence[str]]],
    points: Sequence[str] | None = None,
) -> KanPresentation:
    """Arrows-by-target of a finitely presented category: a one-point set
    per object, acted on trivially, extended along the object inclusion.

    An empty relation side denotes the identity path at the other side's
    source (so the other side must be a cycle).
    """
    obs = tuple(objects)
    arrs = tuple(Arrow(l, s, t) for l, s, t in arrows)
    by_label = {a.label: a for a in arrs}
    if points is None:
        points = tuple(f"e{o}" for o in obs)
    points = tuple(points)
    if len(points) != len(obs):
        raise PresentationError(f"expected {len(obs)} point labels, got {len(points)}")

    rels = []
    for k, (lhs, rhs) in enumerate(relations, 1):
        if not lhs and not rhs:
            raise PresentationError(f"relation {k}: both sides empty")
        l = path_from_labels(tuple(lhs), by_label, source=None, where=f"relation {k} lhs") \
            if lhs else None
        r = path_from_labels(tuple(rhs), by_label, source=None, where=f"relation {k} rhs") \
            if rhs else None
        if l is None:
            l = Path.identity(r.source)  # type: ignore[union-attr]
        if r is None:
            r = Path.identity(l.source)
        rels.append((l, r))

    return _finish(KanPresentation(
        ob_a=obs, arr_a=(),
        ob_b=obs, arr_b=arrs, rel_b=tuple(rels),
        f_ob_a=obs, f_arr_a=(),
        x_ob_a=tuple((pt,) for pt in points), x_arr_a=(),
    ))


def _tagged_prefix_system(
    monoid: MonoidPresentationDesc, words: Sequence[Word], tag: str
) -> KanPresentation:
    if tag in monoid.generators:
        raise PresentationError(f"tag label {tag!r} collides with a generator")
    arrows, rels, word_path = _one_object_delta(monoid)
    n = len(words)
    return _finish(KanPresentation(
        ob_a=(1,), arr_a=((1, 1),) * n,
        ob_b=(1,), arr_b=arrows, rel_b=rels,
        f_ob_a=(1,),
        f_arr_a=tuple(word_path(w, f"word {k}") for k, w in enumerate(words, 1)),
        x_ob_a=((tag,),),
        x_arr_a=((tag,),) * n,
    ))


def from_coset_system(desc: CosetSystemDesc, tag: str = "H") -> KanPresentation:
    """Right cosets of a finitely generated subgroup: the trivial action
    of the subgroup's free generators, extended along their inclusion."""
    if desc.side != "right":
        raise PresentationError("only right coset systems are supported")
    monoid = MonoidPresentationDesc(desc.group_generators, desc.group_relations)
    return _tagged_prefix_system(monoid, desc.subgroup_words, tag)


def from_right_congruence(
    monoid: MonoidPresentationDesc,
    congruence_words: Sequence[Word],
    tag: str = "H",
) -> KanPresentation:
    """Classes of the right congruence generated by ``w ~ empty`` for the
    given words; same shape as the coset encoding, over a monoid."""
    return _tagged_prefix_system(monoid, congruence_words, tag)


def from_relation_quotient(
    points: Sequence[str],
    pairs: Sequence[tuple[str, str]],
    monoid: MonoidPresentationDesc | None = None,
    action: Mapping[str, Sequence[str]] | None = None,
) -> KanPresentation:
    """Equivalence classes of a point set under a relation.

    With ``monoid``/``action`` given this is the equivariant variant:
    the quotient by the smallest equivalence containing the pairs and
    respected by the action, together with the induced action on it.
    Arrows recording the action map to their generator so that acting
    then merging commutes; plain relation arrows map to the identity.
    """
    pts = tuple(points)
    if len(set(pts)) != len(pts):
        raise PresentationError("duplicate point labels")
    index = {p: i + 1 for i, p in enumerate(pts)}
    if (monoid is None) != (action is None):
        raise PresentationError("equivariant variant needs both the monoid and its action")

    if monoid is None:
        arr_b: tuple[Arrow, ...] = ()
        rel_b: tuple = ()
        word_path = None
    else:
        arr_b, rel_b, word_path = _one_object_delta(monoid)

    arr_a: list[tuple[int, int]] = []
    f_arr_a: list[Path] = []
    x_arr_a: list[tuple[str, ...]] = []

    for k, (p, q) in enumerate(pairs, 1):
        if p not in index or q not in index:
            raise PresentationError(f"pair {k}: unknown point")
        arr_a.append((index[p], index[q]))
        f_arr_a.append(Path.identity(1))
        x_arr_a.append((q,))

    if action is not None:
        for g in monoid.generators:  # type: ignore[union-attr]
            images = action.get(g)
            if images is None or len(images) != len(pts):
                raise PresentationError(f"action of {g!r} must list an image per point")
            for p, q in zip(pts, images):
                if q not in index:
                    raise PresentationError(f"action of {g!r}: unknown image {q!r}")
                arr_a.append((index[p], index[q]))
                f_arr_a.append(word_path((g,), f"action of {g!r}"))  # type: ignore[misc]
                x_arr_a.append((q,))

    return _finish(KanPresentation(
        ob_a=tuple(range(1, len(pts) + 1)),
        arr_a=tuple(arr_a),
        ob_b=(1,), arr_b=arr_b, rel_b=rel_b,
        f_ob_a=(1,) * len(pts),
        f_arr_a=tuple(f_arr_a),
        x_ob_a=tuple((p,) for p in pts),
        x_arr_a=tuple(x_arr_a),
    ))


def from_action_orbits(desc: ActionDesc) -> KanPresentation:
    """Orbit representatives of a monoid action: extend the action along
    the null functor to the trivial category."""
    pts = tuple(desc.points)
    if len(set(pts)) != len(pts):
        raise PresentationError("duplicate point labels")
    gens = desc.monoid.generators
    x_arr_a = []
    for g in gens:
        images = desc.action.get(g)
        if images is None or len(images) != len(pts):
            raise PresentationError(f"action of {g!r} must list an image per point")
        for q in images:
            if q not in pts:
                raise PresentationError(f"action of {g!r}: unknown image {q!r}")
        x_arr_a.append(tuple(images))
    return _finish(KanPresentation(
        ob_a=(1,), arr_a=((1, 1),) * len(gens),
        ob_b=(1,), arr_b=(), rel_b=(),
        f_ob_a=(1,),
        f_arr_a=(Path.identity(1),) * len(gens),
        x_ob_a=(pts,),
        x_arr_a=tuple(x_arr_a),
    ))


def conjugation_action(
    group: MonoidPresentationDesc,
    elements: Sequence[Word],
    inverses: Mapping[str, Word],
    labels: Sequence[str] | None = None,
) -> ActionDesc:
    """Derive the conjugation action of a finite group on its own
    elements, for feeding :func:`from_action_orbits`.

    The caller supplies the element words and one inverse word per
    generator; images are computed by completing the group's relation
    rules and reducing ``inverse * element * generator``.
    """
    arrows, rels, word_path = _one_object_delta(group)
    order = OrderSpec(x_rank={}, delta_rank={g: i for i, g in enumerate(group.generators)})
    oriented = [orient_pair(l, r, order) for l, r in rels]
    result = complete(
        RewriteSystem((), tuple(KRule(*pair) for pair in oriented if pair is not None)),
        order,
    )
    if not result.complete:
        raise PresentationError("group relations did not complete; cannot derive conjugation")
    system = result.system

    def nf(word: Word) -> Path:
        return reduce_path(word_path(word, "word"), system)

    element_nfs = [nf(w) for w in elements]
    if len(set(element_nfs)) != len(element_nfs):
        raise PresentationError("element words are not distinct in the group")
    by_nf = {p: i for i, p in enumerate(element_nfs)}

    if labels is None:
        labels = tuple("id" if not w else "".join(w) for w in elements)
    labels = tuple(labels)
    if len(labels) != len(elements):
        raise PresentationError("expected one label per element")

    identity_nf = nf(())
    action: dict[str, tuple[str, ...]] = {}
    for g in group.generators:
        inv = inverses.get(g)
        if inv is None:
            raise PresentationError(f"no inverse word supplied for generator {g!r}")
        if nf(tuple(inv) + (g,)) != identity_nf or nf((g,) + tuple(inv)) != identity_nf:
            raise PresentationError(f"word {inv!r} is not an inverse of {g!r}")
        images = []
        for w in elements:
            conj = nf(tuple(inv) + tuple(w) + (g,))
            i = by_nf.get(conj)
            if i is None:
                raise PresentationError("element list is not closed under conjugation")
            images.append(labels[i])
        action[g] = tuple(images)
    return ActionDesc(monoid=group, points=labels, action=action)


def from_colimit_diagram(
    gamma_arrows: Sequence[tuple[int, int]],
    x_sets: Sequence[Sequence[str]],
    x_maps: Sequence[Sequence[str]],
    objects: Sequence[int] | None = None,
) -> KanPresentation:
    """Colimit of a diagram of sets: extend the diagram along the null
    functor; the single extension set is the colimit object and the
    comparison map gives the colimit functions."""
    obs = tuple(objects) if objects is not None else tuple(range(1, len(x_sets) + 1))
    if len(x_sets) != len(obs):
        raise PresentationError(f"expected {len(obs)} point sets, got {len(x_sets)}")
    if len(x_maps) != len(gamma_arrows):
        raise PresentationError(f"expected {len(gamma_arrows)} image lists, got {len(x_maps)}")
    return _finish(KanPresentation(
        ob_a=obs,
        arr_a=tuple((s, t) for s, t in gamma_arrows),
        ob_b=(1,), arr_b=(), rel_b=(),
        f_ob_a=(1,) * len(obs),
        f_arr_a=(Path.identity(1),) * len(gamma_arrows),
        x_ob_a=tuple(tuple(xs) for xs in x_sets),
        x_arr_a=tuple(tuple(xs) for xs in x_maps),
    ))


def from_group_morphism(
    source: MonoidPresentationDesc,
    target: MonoidPresentationDesc,
    gen_images: Mapping[str, Word],
    points: Sequence[str],
    action: Mapping[str, Sequence[str]],
) -> KanPresentation:
    """The action induced along a morphism of monoids (or groups given as
    monoids): one loop per source generator carrying the supplied action,
    mapped by the morphism's generator images."""
    pts = tuple(points)
    arrows, rels, word_path = _one_object_delta(target)
    arr_a = []
    f_arr_a = []
    x_arr_a = []
    for g in source.generators:
        w = gen_images.get(g)
        if w is None:
            raise PresentationError(f"no image word for source generator {g!r}")
        images = action.get(g)
        if images is None or len(images) != len(pts):
            raise PresentationError(f"action of {g!r} must list an image per point")
        arr_a.append((1, 1))
        f_arr_a.append(word_path(tuple(w), f"image of {g!r}"))
        x_arr_a.append(tuple(images))
    return _finish(KanPresentation(
        ob_a=(1,), arr_a=tuple(arr_a),
        ob_b=(1,), arr_b=arrows, rel_b=rels,
        f_ob_a=(1,), f_arr_a=tuple(f_arr_a),
        x_ob_a=(pts,), x_arr_a=tuple(x_arr_a),
    ))


# --- JSON descriptor parsing (CLI `encode`) ---

ENCODE_FAMILIES = (
    "monoid", "category", "cosets", "congruence",
    "quotient", "orbits", "colimit", "induced",
)


def _json_word(obj, where: str) -> Word:
    if not isinstance(obj, list) or not all(isinstance(x, str) for x in obj):
        raise PresentationError(f"{where}: expected an array of generator labels")
    return tuple(obj)


def _json_relations(obj, where: str) -> tuple[tuple[Word, Word], ...]:
    if not isinstance(obj, list):
        raise PresentationError(f"{where}: expected an array of word pairs")
    out = []
    for k, entry in enumerate(obj, 1):
        if not isinstance(entry, list) or len(entry) != 2:
            raise PresentationError(f"{where}[{k}]: expected a pair of words")
        out.append((_json_word(entry[0], f"{where}[{k}].lhs"),
                    _json_word(entry[1], f"{where}[{k}].rhs")))
    return tuple(out)


def _json_strings(obj, where: str) -> tuple[str, ...]:
    if not isinstance(obj, list) or not all(isinstance(x, str) for x in obj):
        raise PresentationError(f"{where}: expected an array of labels")
    return tuple(obj)


def _json_monoid(obj, where: str) -> MonoidPresentationDesc:
    if not isinstance(obj, Mapping):
        raise PresentationError(f"{where}: expected an object")
    return MonoidPresentationDesc(
        generators=_json_strings(obj.get("generators", ()), f"{where}.generators"),
        relations=_json_relations(obj.get("relations", []), f"{where}.relations"),
    )


def _json_action(obj, where: str) -> dict[str, tuple[str, ...]]:
    if not isinstance(obj, Mapping):
        raise PresentationError(f"{where}: expected an object mapping generators to image lists")
    return {g: _json_strings(images, f"{where}.{g}") for g, images in obj.items()}


def encode_from_json(family: str, data: Mapping) -> KanPresentation:
    """Dispatch a JSON descriptor to its constructor."""
    if not isinstance(data, Mapping):
        raise PresentationError("descriptor must be a JSON object")
    if family == "monoid":
        desc = _json_monoid(data, "monoid")
        return from_monoid_presentation(desc, point=data.get("point", "e"))
    if family == "category":
        arrows = []
        for k, entry in enumerate(data.get("arrows", []), 1):
            if (not isinstance(entry, list) or len(entry) != 3
                    or not isinstance(entry[0], str)):
                raise PresentationError(f"arrows[{k}]: expected [label, src, tgt]")
            arrows.append((entry[0], entry[1], entry[2]))
        relations = list(_json_relations(data.get("relations", []), "relations"))
        points = data.get("points")
        return from_category_presentation(
            data.get("objects", ()), arrows, relations,
            points=_json_strings(points, "points") if points is not None else None,
        )
    if family == "cosets":
        desc = CosetSystemDesc(
            group_generators=_json_strings(data.get("generators", ()), "generators"),
            group_relations=_json_relations(data.get("relations", []), "relations"),
            subgroup_words=tuple(
                _json_word(w, f"subgroup[{k}]")
                for k, w in enumerate(data.get("subgroup", []), 1)
            ),
            side=data.get("side", "right"),
        )
        return from_coset_system(desc, tag=data.get("tag", "H"))
    if family == "congruence":
        monoid = _json_monoid(data.get("monoid", {}), "monoid")
        words = tuple(
            _json_word(w, f"congruence[{k}]")
            for k, w in enumerate(data.get("congruence", []), 1)
        )
        return from_right_congruence(monoid, words, tag=data.get("tag", "H"))
    if family == "quotient":
        pairs = []
        for k, entry in enumerate(data.get("pairs", []), 1):
            if not isinstance(entry, list) or len(entry) != 2:
                raise PresentationError(f"pairs[{k}]: expected a pair of points")
            pairs.append((entry[0], entry[1]))
        monoid = _json_monoid(data["monoid"], "monoid") if "monoid" in data else None
        action = _json_action(data["action"], "action") if "action" in data else None
        return from_relation_quotient(
            _json_strings(data.get("points", ()), "points"), pairs,
            monoid=monoid, action=action,
        )
    if family == "orbits":
        if data.get("variant", "plain") == "conjugation":
            group = _json_monoid(data.get("group", {}), "group")
            elements = tuple(
                _json_word(w, f"elements[{k}]")
                for k, w in enumerate(data.get("elements", []), 1)
            )
            inverses = {
                g: _json_word(w, f"inverses.{g}")
                for g, w in data.get("inverses", {}).items()
            }
            labels = data.get("labels")
            desc = conjugation_action(
                group, elements, inverses,
                labels=_json_strings(labels, "labels") if labels is not None else None,
            )
        else:
            desc = ActionDesc(
                monoid=_json_monoid(data.get("monoid", {}), "monoid"),
                points=_json_strings(data.get("points", ()), "points"),
                action=_json_action(data.get("action", {}), "action"),
            )
        return from_action_orbits(desc)
    if family == "colimit":
        arrows = []
        for k, entry in enumerate(data.get("arrows", []), 1):
            if not isinstance(entry, list) or len(entry) != 2:
                raise PresentationError(f"arrows[{k}]: expected [src, tgt]")
            arrows.append((entry[0], entry[1]))
        x_sets = [_json_strings(xs, f"xObjects[{i}]")
                  for i, xs in enumerate(data.get("xObjects", []), 1)]
        x_maps = [_json_strings(xs, f"xArrows[{k}]")
                  for k, xs in enumerate(data.get("xArrows", []), 1)]
        objects = data.get("objects")
        return from_colimit_diagram(arrows, x_sets, x_maps, objects=objects)
    if family == "induced":
        return from_group_morphism(
            source=_json_monoid(data.get("source", {}), "source"),
            target=_json_monoid(data.get("target", {}), "target"),
            gen_images={g: _json_word(w, f"morphism.{g}")
                        for g, w in data.get("morphism", {}).items()},
            points=_json_strings(data.get("points", ()), "points"),
            action=_json_action(data.get("action", {}), "action"),
        )
    raise PresentationError(f"unknown encoding family {family!r}")
