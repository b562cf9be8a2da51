"""Text DSL: categories, functors, monads, fixtures and tasks."""

from .document import DslDocument, Task, document_from_category
from .parser import parse
from .printer import print_document
from .workspace import Workspace

__all__ = ["DslDocument", "Task", "Workspace", "document_from_category", "parse", "print_document"]
