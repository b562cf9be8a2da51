MESSAGES = {
    "en": {
        "report_header": "document {document}: {count} task(s), exit status {status}",
        "empty_report": "document {document}: no tasks, exit status 0",
        "task_line": "[{index}] {command}: {status}",
        "task_note": "    note: {note}",
        "suite_header": "acceptance suite ({mode})",
        "suite_line": "  {status:<4} {name} ({detail})",
        "suite_summary": "{passed}/{total} checks passed",
        "error": "error: {message}",
        "file_not_found": "error: file not found: {path}",
        "budget_exceeded": "error: {message} (raise --max-objects or FINLOC_MAX_OBJECTS)",
    }
}


def get_message(message_key: str, language_code: str = "en") -> str:
    """Get a message template in the specified language.

    Args:
        message_key: The key of the message to retrieve (e.g., 'task_line', 'suite_summary')
        language_code: The language code. Only 'en' is bundled; anything else falls back to it.

    Returns:
        str: The message template, to be filled with ``str.format``.
    """
    try:
        return MESSAGES[language_code.lower()][message_key]
    except KeyError:
        return MESSAGES["en"][message_key]  # Fallback to English
