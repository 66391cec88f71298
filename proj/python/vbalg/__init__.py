"""Python access to the vbalg command surface.

Documents are the JSON interchange format; scalars are exact "p/q" strings.
"""

import json

from ._vbalg import example, example_names, format_version, run

__all__ = ["CommandError", "call", "example", "example_names", "format_version", "run"]


class CommandError(RuntimeError):
    def __init__(self, code, error):
        super().__init__(error.get("message", "command failed"))
        self.code = code
        self.error = error


def call(*args, document=None, check=True):
    """Run a subcommand and decode its output document.

    With check=True a nonzero exit raises CommandError carrying the error block.
    """
    text = document if isinstance(document, str) or document is None else json.dumps(document)
    code, out, err = run([str(a) for a in args], text or "")
    if code != 0 and check:
        block = json.loads(err)["error"] if err.strip() else {"message": "exit %d" % code}
        raise CommandError(code, block)
    return json.loads(out) if out.strip() else None
