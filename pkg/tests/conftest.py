"""Shared helpers: fixture paths, text-search oracles, and a stub module proxy."""

from __future__ import annotations

import io
import re
import threading
import zipfile
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

import pytest

from goscout.fetch import escape_module_path

REPO_ROOT = Path(__file__).resolve().parent.parent
FIXTURES = REPO_ROOT / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"

VECTOR_FIXTURE_DIRS = sorted(
    d for d in FIXTURES.iterdir() if (d / "expected.json").is_file()
)


def write_tree(root: Path, files: dict[str, str]) -> Path:
    for rel, content in files.items():
        p = root / rel
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(content, encoding="utf-8")
    return root


@pytest.fixture
def gomodule(tmp_path):
    """Write a throwaway module tree from a {relative path: content} dict."""

    def make(files: dict[str, str]) -> Path:
        return write_tree(tmp_path, files)

    return make


# Plain-text search oracles, independent of the parser. Fixtures are written
# so that no string literal or comment fools these counts.

_E8_PATTERNS = (
    "exec.Command(",
    "exec.CommandContext(",
    "syscall.ForkExec(",
    "syscall.Exec(",
    "os.StartProcess(",
)


def text_oracle_counts(text: str) -> dict[str, int]:
    return {
        "P1": sum(
            1 for line in text.splitlines() if line.lstrip().startswith("//go:generate")
        ),
        "I2": len(re.findall(r"(?m)^func init\(", text)),
        "E7": text.count("plugin.Open("),
        "E8": sum(text.count(pat) for pat in _E8_PATTERNS),
    }


def module_oracle_counts(root: Path) -> dict[str, int]:
    totals = {"P1": 0, "I2": 0, "E7": 0, "E8": 0}
    for path in sorted(root.rglob("*.go")):
        counts = text_oracle_counts(path.read_text(encoding="utf-8"))
        for key, n in counts.items():
            totals[key] += n
    return totals


class StubProxy:
    """Minimal in-process Go module proxy serving canned @v/list and zips."""

    def __init__(self):
        self.routes: dict[str, bytes] = {}
        self.hits: list[str] = []
        routes, hits = self.routes, self.hits

        class Handler(BaseHTTPRequestHandler):
            def do_GET(self):
                hits.append(self.path)
                body = routes.get(self.path)
                if body is None:
                    self.send_response(404)
                    self.end_headers()
                    return
                self.send_response(200)
                self.send_header("Content-Length", str(len(body)))
                self.end_headers()
                self.wfile.write(body)

            def log_message(self, *args):
                pass

        self.server = ThreadingHTTPServer(("127.0.0.1", 0), Handler)
        self.thread = threading.Thread(target=self.server.serve_forever, daemon=True)
        self.thread.start()

    @property
    def url(self) -> str:
        return f"http://127.0.0.1:{self.server.server_port}"

    def add_module(
        self,
        path: str,
        version: str,
        files: dict[str, str],
        extra_entries: dict[str, str] | None = None,
    ) -> None:
        escaped = escape_module_path(path)
        buf = io.BytesIO()
        with zipfile.ZipFile(buf, "w") as zf:
            for rel, content in files.items():
                zf.writestr(f"{path}@{version}/{rel}", content)
            for name, content in (extra_entries or {}).items():
                zf.writestr(name, content)
        self.routes[f"/{escaped}/@v/{version}.zip"] = buf.getvalue()
        list_route = f"/{escaped}/@v/list"
        existing = self.routes.get(list_route, b"")
        self.routes[list_route] = existing + f"{version}\n".encode()

    def hits_for(self, fragment: str) -> int:
        return sum(1 for h in self.hits if fragment in h)

    def close(self):
        self.server.shutdown()
        self.server.server_close()


@pytest.fixture
def stub_proxy():
    proxy = StubProxy()
    yield proxy
    proxy.close()
