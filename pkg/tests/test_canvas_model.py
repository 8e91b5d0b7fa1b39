import io
import random
from collections import Counter

import pytest
from PIL import Image

from sketchquest.canvas.model import (
    CanvasDocument,
    HelperObject,
    Stroke,
    apply_stroke,
    element_census,
    move_helper,
    place_helper,
)
from sketchquest.canvas.raster import export_raster
from sketchquest.canvas.serde import deserialize, serialize
from sketchquest.errors import BadDimensions, InvalidStroke, MalformedDocument, UnknownHelper

from conftest import SIMPLE_SVG, random_document, random_helper, random_stroke


def census_oracle(doc: CanvasDocument) -> dict[str, int]:
    """Independent linear recount of labeled elements."""
    counts: Counter[str] = Counter()
    for s in doc.strokes:
        if s.element_tag:
            counts[s.element_tag] += 1
    for h in doc.helpers:
        counts[h.label] += 1
    return dict(counts)


class TestStrokes:
    def test_single_stroke_bumps_revision(self):
        doc = apply_stroke(CanvasDocument(), Stroke("s1", ((0.1, 0.1),)))
        assert len(doc.strokes) == 1
        assert doc.revision == 1

    def test_out_of_range_point_rejected(self):
        with pytest.raises(InvalidStroke):
            Stroke("s1", ((1.2, 0.5),))

    def test_empty_points_rejected(self):
        with pytest.raises(InvalidStroke):
            Stroke("s1", ())

    def test_width_bounds(self):
        with pytest.raises(InvalidStroke):
            Stroke("s1", ((0.5, 0.5),), width=0.2)
        with pytest.raises(InvalidStroke):
            Stroke("s1", ((0.5, 0.5),), width=0.0)

    def test_revision_counts_mutations(self, rng):
        doc = CanvasDocument()
        n = 40
        for i in range(n):
            doc = apply_stroke(doc, random_stroke(rng, ident=f"s{i}"))
        assert doc.revision == n

    def test_prior_strokes_untouched(self, rng):
        doc = apply_stroke(CanvasDocument(), random_stroke(rng, ident="first"))
        before = doc.strokes[0]
        doc2 = apply_stroke(doc, random_stroke(rng, ident="second"))
        assert doc2.strokes[0] == before
        assert doc.revision == 1  # original value untouched


class TestHelpers:
    def test_place_then_move(self, rng):
        helper = random_helper(rng, ident="h1")
        doc = place_helper(CanvasDocument(), helper)
        doc = move_helper(doc, "h1", (0.5, 0.5))
        assert doc.helpers[0].position == (0.5, 0.5)
        assert doc.revision == 2

    def test_move_unknown_helper(self):
        with pytest.raises(UnknownHelper):
            move_helper(CanvasDocument(), "missing", (0.5, 0.5))

    def test_replacing_same_id_is_a_move(self, rng):
        helper = random_helper(rng, ident="h1")
        doc = place_helper(CanvasDocument(), helper)
        doc = place_helper(doc, HelperObject("h1", helper.label, helper.svg_body, (0.9, 0.9)))
        assert len(doc.helpers) == 1
        assert doc.helpers[0].position == (0.9, 0.9)

    def test_drag_sequence_replay(self, rng):
        # final position equals the last move; revision grows by k
        doc = place_helper(CanvasDocument(), random_helper(rng, ident="h1"))
        k = 17
        last = None
        for _ in range(k):
            last = (round(rng.random(), 6), round(rng.random(), 6))
            doc = move_helper(doc, "h1", last)
        assert doc.helpers[0].position == last
        assert doc.revision == 1 + k


class TestCensus:
    def test_empty(self):
        assert element_census(CanvasDocument()) == {}

    def test_mixed_counts(self, rng):
        doc = CanvasDocument()
        doc = apply_stroke(doc, random_stroke(rng, tag="membrane", ident="a"))
        doc = apply_stroke(doc, random_stroke(rng, tag="membrane", ident="b"))
        doc = place_helper(doc, random_helper(rng, label="nucleus"))
        assert element_census(doc) == {"membrane": 2, "nucleus": 1}

    def test_untagged_excluded(self, rng):
        doc = apply_stroke(CanvasDocument(), random_stroke(rng, tag=None))
        assert element_census(doc) == {}

    def test_matches_bruteforce_recount(self):
        rng = random.Random(17)
        for _ in range(100):
            doc = random_document(rng)
            assert element_census(doc) == census_oracle(doc)

    def test_permutation_invariance(self):
        rng = random.Random(23)
        for _ in range(30):
            doc = random_document(rng, max_mutations=10)
            shuffled_strokes = list(doc.strokes)
            shuffled_helpers = list(doc.helpers)
            rng.shuffle(shuffled_strokes)
            rng.shuffle(shuffled_helpers)
            permuted = CanvasDocument(
                strokes=tuple(shuffled_strokes),
                helpers=tuple(shuffled_helpers),
                revision=doc.revision,
            )
            assert element_census(permuted) == element_census(doc)


class TestSerde:
    def test_roundtrip_empty(self):
        doc = CanvasDocument()
        assert deserialize(serialize(doc)) == doc

    def test_truncated_payload(self):
        payload = serialize(random_document(random.Random(3)))
        with pytest.raises(MalformedDocument):
            deserialize(payload[: len(payload) // 2])

    def test_version_mismatch(self):
        with pytest.raises(MalformedDocument):
            deserialize(b'{"version":9,"strokes":[],"helpers":[],"revision":0}')

    def test_roundtrip_random_docs_byte_identical(self):
        rng = random.Random(41)
        for _ in range(100):
            doc = random_document(rng)
            payload = serialize(doc)
            back = deserialize(payload)
            assert back == doc
            assert serialize(back) == payload


class TestRaster:
    def test_empty_doc_is_white(self):
        png = export_raster(CanvasDocument(), 64, 64)
        img = Image.open(io.BytesIO(png)).convert("L")
        assert img.getextrema() == (255, 255)

    def test_horizontal_stroke_marks_row(self):
        stroke = Stroke("s1", ((0.0, 0.5), (1.0, 0.5)), color="#000000", width=0.01)
        doc = apply_stroke(CanvasDocument(), stroke)
        png = export_raster(doc, 128, 128)
        img = Image.open(io.BytesIO(png)).convert("L")
        row = [img.getpixel((x, 64)) for x in range(128)]
        assert min(row) < 255

    def test_helpers_render_above_strokes(self, rng):
        doc = place_helper(CanvasDocument(), random_helper(rng, label="sun"))
        png = export_raster(doc, 128, 128)
        img = Image.open(io.BytesIO(png)).convert("L")
        assert img.getextrema()[0] < 255

    def test_determinism(self):
        rng = random.Random(55)
        doc = random_document(rng, max_mutations=8)
        assert export_raster(doc, 256, 256) == export_raster(doc, 256, 256)

    def test_bad_dimensions(self):
        doc = CanvasDocument()
        with pytest.raises(BadDimensions):
            export_raster(doc, 63, 64)
        with pytest.raises(BadDimensions):
            export_raster(doc, 64, 4097)


class TestHelperMarkupRendering:
    def test_catalog_svg_accepted(self):
        helper = HelperObject("h1", "blob", SIMPLE_SVG, (0.5, 0.5), 0.2)
        doc = place_helper(CanvasDocument(), helper)
        png = export_raster(doc, 128, 128)
        img = Image.open(io.BytesIO(png)).convert("RGB")
        # the gold circle shows up near the center
        assert img.getpixel((64, 64)) != (255, 255, 255)
