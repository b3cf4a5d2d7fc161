"""Line and paragraph marks for long passages.

Every non-blank line i (counted over the whole passage) is wrapped in
`<linei>...</linei>` and every paragraph j (blank-line separated) in
`<Pj>...</Pj>`:

    <P1><line1>First line.</line1>
    <line2>Second line.</line2></P1>

    <P2><line3>Next paragraph.</line3></P2>
"""

import re

_MARKED = re.compile(r"^\s*<P\d+>")
_PARAGRAPH_BREAK = re.compile(r"\n[ \t]*\n+")


def annotate_positions(context: str) -> str:
    """
    Labels a passage with line and paragraph marks.

    Already-marked text is returned unchanged, so the function is idempotent.

    Args:
        context (str): The passage.

    Returns:
        str: The marked passage; empty for an empty passage.
    """
    if not context.strip() or _MARKED.match(context):
        return context
    line_no = 0
    paragraphs = []
    for p_no, paragraph in enumerate(_PARAGRAPH_BREAK.split(context.strip("\n")), start=1):
        lines = []
        for line in paragraph.split("\n"):
            if not line.strip():
                continue
            line_no += 1
            lines.append(f"<line{line_no}>{line}</line{line_no}>")
        paragraphs.append(f"<P{p_no}>" + "\n".join(lines) + f"</P{p_no}>")
    return "\n\n".join(paragraphs)
