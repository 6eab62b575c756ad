"""Instance parsing and the built-in corpus.

Shorthand grammar (also accepted by the CLI):
    zmod:12           the ring Z_12 as a module over itself
    product:2,3       the product ring Z_2 x Z_3 over itself
    matrix:2,2        2x2 matrices over F_2 over itself (matrix:n,q)
    cyclic:8:2,4      Z_2 + Z_4 as a Z_8-module
Anything else is treated as a path to a JSON instance file with keys
"ring", "module" and optional "caps".
"""

import json
import os

from . import errors
from .finmod import Caps, DEFAULT_CAPS, build_module
from .topology import discrete, empty_space, indiscrete, sierpinski

# Chosen to cover distributive and non-distributive submodule lattices,
# quasi-duo and non, pm and non, biregular and non, and one module that
# fails the projectivity probe.
CORPUS_IDS = (
    "zmod:2",
    "zmod:3",
    "zmod:4",
    "zmod:6",
    "zmod:8",
    "zmod:9",
    "zmod:12",
    "zmod:16",
    "zmod:24",
    "zmod:36",
    "product:2,2",
    "product:2,3",
    "product:2,2,2",
    "matrix:2,2",
    "cyclic:2:2,2",
    "cyclic:3:3,3",
    "cyclic:8:2,4",
)


def _ints(text, what):
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part.isdigit():
            raise errors.PreconditionError(f"{what}: expected an integer, got {part!r}")
        out.append(int(part))
    return out


def parse_shorthand(text):
    """Shorthand -> (ring_spec, module_spec); None when not a shorthand."""
    head, sep, rest = text.partition(":")
    if not sep:
        return None
    if head == "zmod":
        (n,) = _ints(rest, "zmod")
        return {"kind": "zmod", "n": n}, {"kind": "regular"}
    if head == "product":
        ns = _ints(rest, "product")
        return ({"kind": "product",
                 "factors": [{"kind": "zmod", "n": n} for n in ns]},
                {"kind": "regular"})
    if head == "matrix":
        n, q = _ints(rest, "matrix")
        return {"kind": "matrix", "n": n, "q": q}, {"kind": "regular"}
    if head == "cyclic":
        base, sep2, moduli = rest.partition(":")
        if not sep2:
            raise errors.PreconditionError(
                "cyclic shorthand is cyclic:<base>:<m1,m2,...>")
        (n,) = _ints(base, "cyclic base")
        ms = _ints(moduli, "cyclic moduli")
        return {"kind": "zmod", "n": n}, {"kind": "cyclic-product", "moduli": ms}
    return None


def load_instance_file(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as e:
        raise errors.PreconditionError(f"cannot read instance file: {e}")
    except json.JSONDecodeError as e:
        raise errors.PreconditionError(f"{path}: invalid JSON at line {e.lineno}: {e.msg}")
    if not isinstance(doc, dict) or "ring" not in doc or "module" not in doc:
        raise errors.PreconditionError(f"{path}: expected an object with 'ring' and 'module'")
    caps = DEFAULT_CAPS
    if "caps" in doc:
        c = doc["caps"]
        caps = Caps(max_size=int(c.get("max_size", DEFAULT_CAPS.max_size)),
                    max_hom_candidates=int(c.get("max_hom_candidates",
                                                 DEFAULT_CAPS.max_hom_candidates)),
                    max_submodules=int(c.get("max_submodules",
                                             DEFAULT_CAPS.max_submodules)))
    return doc["ring"], doc["module"], caps


def build_instance(text, caps=None):
    """Build (instance_id, FiniteModule) from a shorthand or a JSON path."""
    parsed = parse_shorthand(text)
    if parsed is not None:
        ring_spec, module_spec = parsed
        return text, build_module(ring_spec, module_spec, caps=caps or DEFAULT_CAPS)
    if os.path.exists(text) or text.endswith(".json"):
        ring_spec, module_spec, file_caps = load_instance_file(text)
        return text, build_module(ring_spec, module_spec, caps=caps or file_caps)
    raise errors.PreconditionError(
        f"unrecognised instance {text!r}: not a shorthand and not a file")


def corpus_modules(caps=None):
    """The built-in corpus, in its fixed order."""
    return [build_instance(i, caps=caps) for i in CORPUS_IDS]


def corpus_spaces():
    """Stock spaces for the topology-side invariants."""
    return [
        ("empty", empty_space()),
        ("sierpinski", sierpinski()),
        ("discrete2", discrete(2)),
        ("discrete3", discrete(3)),
        ("indiscrete3", indiscrete(3)),
    ]
