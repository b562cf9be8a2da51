from typing import Union

from .structured_interface import StructuredInterface
from .text_interface import TextInterface


def get_interface(output_format: str) -> Union[TextInterface, StructuredInterface]:
    if output_format == "text":
        return TextInterface()
    elif output_format == "structured":
        return StructuredInterface()
    else:
        raise ValueError(f"Unsupported output format: {output_format}. Supported formats: 'text', 'structured'")


__all__ = ["TextInterface", "StructuredInterface", "get_interface"]
