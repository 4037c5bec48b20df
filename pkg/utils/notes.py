import json
import re
import time
from pathlib import Path

import yaml
from rich.panel import Panel

from utils.display import error_console
from utils.log import get_logger

logger = get_logger(__name__)


class TranscriptNote:
    """A computation transcript as markdown with YAML front matter"""

    def __init__(self, title, content, tags=None, metadata=None):
        self.title = title
        self.content = content
        self.tags = tags or []
        self.metadata = metadata or {}
        self.creation_date = time.strftime("%Y-%m-%d")

    def to_markdown(self):
        """Convert the note to markdown format with YAML frontmatter"""
        frontmatter = {
            "title": self.title,
            "date": self.creation_date,
            "tags": self.tags,
        }
        frontmatter.update(self.metadata)
        yaml_str = yaml.safe_dump(frontmatter, default_flow_style=False, sort_keys=False)
        return f"---\n{yaml_str}---\n\n{self.content}"


def sanitize_filename(name):
    """Convert a string to a valid filename"""
    name = re.sub(r"[^\w\s-]", "", name)
    name = re.sub(r"\s+", "-", name.strip())
    return name[:50] or "transcript"


def create_transcript_note(command, payload, passed=None, options=None):
    """
    Args:
        command: the subcommand line, e.g. "lift idempotent triangular-3"
        payload: the JSON document the command produced
        passed: overall verdict, when the command has one
        options: flag values worth keeping in the front matter
    """
    content = f"# {command}\n\n"
    if passed is not None:
        content += f"Verdict: **{'pass' if passed else 'fail'}**\n\n"
    transcript = payload.get("transcript") if isinstance(payload, dict) else None
    if transcript:
        content += "## Transcript\n\n"
        for check in transcript:
            line = f"- `{check['status']}` [{check['stage']}] {check['relation']}"
            if check.get("detail"):
                line += f" ({check['detail']})"
            content += line + "\n"
        content += "\n"
    content += "## Result\n\n```json\n" + json.dumps(payload, indent=2, sort_keys=True) + "\n```\n"
    metadata = {"command": command, "options": options or {}}
    if passed is not None:
        metadata["passed"] = passed
    tags = ["cend", command.split()[0]]
    return TranscriptNote(command, content, tags, metadata)


def export_transcript(directory, command, payload, passed=None, options=None):
    """Write the note under ``directory``; returns the file path"""
    target = Path(directory)
    target.mkdir(parents=True, exist_ok=True)
    path = target / f"{sanitize_filename(command)}.md"
    note = create_transcript_note(command, payload, passed, options)
    path.write_text(note.to_markdown(), encoding="utf-8")
    logger.debug("transcript written to %s", path)
    error_console.print(Panel(
        f"[green]Exported to:[/green]\n{path}",
        title="[bold green]Transcript export[/bold green]",
        border_style="green",
        expand=False,
    ))
    return path
