"""COCO-style annotation ingestion and the per-category image index.

The input format is the standard COCO "instances" JSON layout: top-level
arrays ``images`` (objects with integer ``id``), ``categories`` (objects
with integer ``id``, string ``name``, string ``supercategory``) and
``annotations`` (objects with integer ``image_id`` and ``category_id``).
Every other field (bounding boxes, segmentation, file names, ...) is
ignored, so real COCO files parse unmodified.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import BinaryIO, Iterable, NamedTuple


class IngestError(Exception):
    """Base class for annotation ingestion failures."""


class ParseError(IngestError):
    """The annotation document is malformed or misses required fields."""


class IntegrityError(IngestError):
    """Records violate uniqueness or referential integrity."""


class MergeError(IngestError):
    """Two datasets cannot be combined into one."""


class Annotation(NamedTuple):
    image_id: int
    category_id: int
    iscrowd: bool = False


@dataclass(frozen=True)
class Category:
    id: int
    name: str
    supercategory: str


@dataclass(frozen=True)
class AnnotationDataset:
    """Parsed images, categories and instance annotations.

    Only identifiers are retained for images; categories keep their name
    and supercategory, annotations keep the (image, category) link plus
    the crowd flag.
    """

    images: tuple[int, ...]
    categories: tuple[Category, ...]
    annotations: tuple[Annotation, ...]

    @property
    def image_count(self) -> int:
        return len(self.images)

    @property
    def annotation_count(self) -> int:
        return len(self.annotations)

    @property
    def category_count(self) -> int:
        return len(self.categories)


@dataclass(frozen=True)
class CategoryImageIndex:
    """For each category, the set of distinct images containing it.

    An image counts once per category no matter how many instances it
    holds; categories that were never annotated keep an empty set.
    """

    entries: dict[int, frozenset[int]]
    categories: tuple[Category, ...]
    image_count: int
    annotation_count: int
    include_crowd: bool = True

    def category_by_id(self, category_id: int) -> Category:
        for category in self.categories:
            if category.id == category_id:
                return category
        raise KeyError(f"unknown category id: {category_id}")


def _record_field(record: dict, field: str, where: str, position: int):
    if not isinstance(record, dict):
        raise ParseError(f"{where} entry #{position} is not an object: {record!r}")
    try:
        return record[field]
    except KeyError:
        raise ParseError(
            f"{where} entry #{position} is missing {field!r}"
        ) from None


def parse_annotations(source: bytes | BinaryIO) -> AnnotationDataset:
    """Parse a COCO-style instances document from bytes or a binary stream.

    Raises ParseError for malformed JSON (with line/column/byte locus) or
    missing fields, IntegrityError for duplicate identifiers or dangling
    image/category references.
    """
    data = source if isinstance(source, (bytes, bytearray)) else source.read()
    try:
        document = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"malformed annotation document: {exc.msg} at line {exc.lineno} "
            f"column {exc.colno} (byte {exc.pos})"
        ) from exc

    if not isinstance(document, dict):
        raise ParseError("annotation document must be a JSON object")
    missing = [k for k in ("images", "categories", "annotations") if k not in document]
    if missing:
        raise ParseError(
            f"annotation document lacks top-level arrays: {', '.join(missing)}"
        )

    image_ids: list[int] = []
    seen_images: set[int] = set()
    for position, record in enumerate(document["images"]):
        image_id = _record_field(record, "id", "image", position)
        if image_id in seen_images:
            raise IntegrityError(f"duplicate image id: {image_id}")
        seen_images.add(image_id)
        image_ids.append(image_id)

    categories: list[Category] = []
    seen_category_ids: set[int] = set()
    seen_names: set[str] = set()
    for position, record in enumerate(document["categories"]):
        category = Category(
            id=_record_field(record, "id", "category", position),
            name=_record_field(record, "name", "category", position),
            supercategory=_record_field(record, "supercategory", "category", position),
        )
        if category.id in seen_category_ids:
            raise IntegrityError(f"duplicate category id: {category.id}")
        if category.name in seen_names:
            raise IntegrityError(f"duplicate category name: {category.name!r}")
        seen_category_ids.add(category.id)
        seen_names.add(category.name)
        categories.append(category)
    categories.sort(key=lambda c: c.id)

    annotations: list[Annotation] = []
    for position, record in enumerate(document["annotations"]):
        image_id = _record_field(record, "image_id", "annotation", position)
        category_id = _record_field(record, "category_id", "annotation", position)
        if image_id not in seen_images:
            raise IntegrityError(
                f"annotation #{position} (id={record.get('id')!r}) references "
                f"unknown image_id {image_id}"
            )
        if category_id not in seen_category_ids:
            raise IntegrityError(
                f"annotation #{position} (id={record.get('id')!r}) references "
                f"unknown category_id {category_id}"
            )
        annotations.append(
            Annotation(image_id, category_id, bool(record.get("iscrowd", 0)))
        )

    return AnnotationDataset(
        images=tuple(image_ids),
        categories=tuple(categories),
        annotations=tuple(annotations),
    )


def load_annotations(path: str | Path) -> AnnotationDataset:
    """Parse one annotation file from disk."""
    with open(path, "rb") as handle:
        return parse_annotations(handle)


def merge_datasets(a: AnnotationDataset, b: AnnotationDataset) -> AnnotationDataset:
    """Concatenate two datasets that share a category table.

    The image id sets must be disjoint (e.g. the train and val splits of
    one release); the category tables must agree id-for-id.
    """
    table_a = {c.id: (c.name, c.supercategory) for c in a.categories}
    table_b = {c.id: (c.name, c.supercategory) for c in b.categories}
    if table_a != table_b:
        differing = sorted(
            set(table_a.items()) ^ set(table_b.items()),
        )
        raise MergeError(f"conflicting category tables: {differing[:4]!r}")
    overlap = set(a.images) & set(b.images)
    if overlap:
        raise MergeError(
            f"overlapping image ids between datasets "
            f"({len(overlap)} shared, e.g. {sorted(overlap)[:4]})"
        )
    return AnnotationDataset(
        images=a.images + b.images,
        categories=a.categories,
        annotations=a.annotations + b.annotations,
    )


def load_many(paths: Iterable[str | Path]) -> AnnotationDataset:
    """Parse several annotation files and merge them into one dataset."""
    datasets = [load_annotations(path) for path in paths]
    if not datasets:
        raise ValueError("at least one annotation path is required")
    merged = datasets[0]
    for dataset in datasets[1:]:
        merged = merge_datasets(merged, dataset)
    return merged


def build_index(
    dataset: AnnotationDataset, *, include_crowd: bool = True
) -> CategoryImageIndex:
    """Build the per-category image-set index.

    Category presence is image-level and boolean: multiple instances of a
    category in one image collapse to a single set membership. Crowd
    annotations count like ordinary instances unless ``include_crowd`` is
    off.
    """
    sets: dict[int, set[int]] = {c.id: set() for c in dataset.categories}
    used = 0
    for annotation in dataset.annotations:
        if annotation.iscrowd and not include_crowd:
            continue
        sets[annotation.category_id].add(annotation.image_id)
        used += 1
    return CategoryImageIndex(
        entries={cid: frozenset(images) for cid, images in sets.items()},
        categories=dataset.categories,
        image_count=dataset.image_count,
        annotation_count=used,
        include_crowd=include_crowd,
    )
