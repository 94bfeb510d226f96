# cu-sketch-lab: Count-Min / conservative-update sketches as counter processes on hash hypergraphs
__version__ = "1.0.0"

HEADER_PREFIX = "cu-sketch-lab"


def metadata_header(seed):
    """Return the provenance line carried by every result file."""
    return f"{HEADER_PREFIX} v{__version__} seed={seed}"
