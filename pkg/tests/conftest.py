import pytest

from lawlint.corpus import parse_snapshot


def element(id, kind, text="", children=(), heading=None, label=None):
    return {
        "id": id,
        "kind": kind,
        "label": label or id,
        "heading": heading,
        "text": text,
        "children": list(children),
    }


def make_snapshot(elements, roots, references=(), label="test", on_dangling="error"):
    data = {
        "label": label,
        "roots": list(roots),
        "elements": elements,
        "references": [
            {"source": s, "target": t, "raw": raw} for s, t, raw in references
        ],
    }
    snapshot, _ = parse_snapshot(data, on_dangling=on_dangling)
    return snapshot


@pytest.fixture
def toy_document():
    """Two-part toy document: nine sections under parts A (chapters I, II)
    and B, mirroring an irregular statute hierarchy."""
    sections = {
        "s1": "The term 'alpha' means a first thing.",
        "s2": "Not later than 30 days after January 1 each year.",
        "s3": "A payment of $1,000 or 50 percent of the total.",
        "s4": "For the purposes of this section.",
        "s5": "For the purposes of this section.",
        "s6": "No person may act and no entity may omit.",
        "s7": "See section 3 of title 1 for details.",
        "s8": "Apples or pears or plums.",
        "s9": "Interstate and/or foreign commerce.",
    }
    elements = [
        element("X", "document", heading="Toy Document X",
                children=["A", "B"]),
        element("A", "part", children=["I", "II"], heading="Part A"),
        element("I", "chapter", children=["s1", "s2", "s3"], heading="Chapter I"),
        element("II", "chapter", children=["s4", "s5", "s6"], heading="Chapter II"),
        element("B", "part", children=["s7", "s8", "s9"], heading="Part B"),
    ] + [
        element(sid, "section", text=text, heading=f"Section {sid[1]}")
        for sid, text in sections.items()
    ]
    references = [
        ("s7", "s3", "section 3"),
        ("s2", "s6", "section 6"),
        ("s6", "s8", "section 8"),
    ]
    return make_snapshot(elements, ["X"], references, label="toy")
