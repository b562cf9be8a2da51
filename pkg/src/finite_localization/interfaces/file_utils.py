import logging
from importlib import resources
from pathlib import Path
from typing import List, Optional, Tuple

logger = logging.getLogger(__name__)

# Suffixes the CLI reads without a warning
SUPPORTED_DOCUMENT_SUFFIXES = {".fl", ".txt"}


def is_supported_document(path: Path) -> bool:
    """Check if the document suffix is one the DSL is normally stored under."""
    return path.suffix.lower() in SUPPORTED_DOCUMENT_SUFFIXES


def read_document(path: str) -> Tuple[str, str]:
    """
    Reads a DSL document from disk.

    Args:
        path: Path to the document.

    Returns:
        Tuple of (text, document_name); the name is the file name.

    Raises:
        FileNotFoundError: The path does not exist or is a directory.
    """
    file_path = Path(path)
    if not file_path.is_file():
        raise FileNotFoundError(f"no such document: {path}")
    if not is_supported_document(file_path):
        logger.warning(f"[file:{file_path.name}] unexpected suffix {file_path.suffix!r}, parsing anyway")
    text = file_path.read_text(encoding="utf-8")
    logger.debug(f"[file:{file_path.name}] read {len(text)} characters")
    return text, file_path.name


def write_output(text: str, path: Optional[str] = None) -> None:
    """Write rendered output to ``path``, or to stdout when no path is given."""
    if path is None:
        print(text, end="")
        return
    Path(path).write_text(text, encoding="utf-8")
    logger.info(f"[file:{Path(path).name}] wrote {len(text)} characters")


def example_documents() -> List[Tuple[str, str]]:
    """The bundled example documents as (name, text), sorted by name."""
    folder = resources.files("finite_localization.dsl").joinpath("examples")
    found = [(entry.name, entry.read_text(encoding="utf-8")) for entry in folder.iterdir() if entry.name.endswith(".fl")]
    return sorted(found)
