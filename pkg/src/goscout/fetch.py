"""Go module proxy client: version listing and archive download with a cache.

Speaks the proxy wire protocol: GET {base}/{escaped}/@v/list and
GET {base}/{escaped}/@v/{version}.zip, where uppercase letters in module
paths are encoded as "!" plus the lowercase letter. Downloads are extracted
under the cache directory and reused on later calls; archive entries are
checked against path traversal before anything is written.
"""

from __future__ import annotations

import logging
import os
import re
import shutil
import tempfile
import zipfile
from dataclasses import dataclass
from pathlib import Path

import requests
from filelock import FileLock

log = logging.getLogger(__name__)

DEFAULT_PROXY = "https://proxy.golang.org"


class ProxyError(Exception):
    pass


@dataclass(frozen=True)
class ProxyConfig:
    base_url: str = DEFAULT_PROXY
    cache_dir: Path = Path.home() / ".cache" / "goscout"
    timeout: float = 30.0

    def __post_init__(self):
        object.__setattr__(self, "base_url", self.base_url.rstrip("/"))
        object.__setattr__(self, "cache_dir", Path(self.cache_dir))

    @staticmethod
    def resolve_base_url(explicit: str | None = None) -> str:
        """Pick the proxy URL: explicit flag, then GOPROXY, then the default.

        Only the first comma- or pipe-separated GOPROXY entry is used;
        "off" and "direct" cannot back a download and are rejected.
        """
        if explicit:
            return explicit
        env = os.environ.get("GOPROXY", "").strip()
        if not env:
            return DEFAULT_PROXY
        first = re.split(r"[,|]", env)[0].strip()
        if first in ("off", "direct"):
            raise ProxyError(
                f"GOPROXY={first!r} disables proxy downloads; "
                "set a proxy URL or pass --proxy"
            )
        return first


def escape_module_path(path: str) -> str:
    """Encode uppercase letters as "!" + lowercase for proxy URLs."""
    if re.search(r"![A-Z]", path):
        raise ProxyError(f"ambiguous module path (contains '!' + uppercase): {path}")
    return re.sub(r"[A-Z]", lambda m: "!" + m.group().lower(), path)


_SEMVER_RE = re.compile(
    r"^v(\d+)\.(\d+)\.(\d+)(?:-([0-9A-Za-z.-]+))?(?:\+[0-9A-Za-z.-]+)?$"
)


def _semver_key(version: str):
    """Sort key for Go-style semantic versions; malformed tags sort first."""
    m = _SEMVER_RE.match(version)
    if not m:
        return (0, (), (), version)
    nums = tuple(int(g) for g in m.group(1, 2, 3))
    pre = m.group(4)
    if pre is None:
        return (1, nums, (1,), "")
    parts = []
    for ident in pre.split("."):
        if ident.isdigit():
            parts.append((0, int(ident), ""))
        else:
            parts.append((1, 0, ident))
    return (1, nums, (0, tuple(parts)), "")


def _get(url: str, cfg: ProxyConfig) -> requests.Response:
    try:
        resp = requests.get(url, timeout=cfg.timeout)
    except requests.RequestException as exc:
        raise ProxyError(f"GET {url} failed: {exc}") from exc
    if resp.status_code != 200:
        raise ProxyError(f"GET {url} -> HTTP {resp.status_code}")
    return resp


def resolve_versions(path: str, cfg: ProxyConfig) -> list[str]:
    """Known versions of a module, ascending by semantic version; cached."""
    escaped = escape_module_path(path)
    cache_file = cfg.cache_dir / escaped / "@v" / "list"
    if cache_file.is_file():
        body = cache_file.read_text(encoding="utf-8")
    else:
        body = _get(f"{cfg.base_url}/{escaped}/@v/list", cfg).text
        cache_file.parent.mkdir(parents=True, exist_ok=True)
        cache_file.write_text(body, encoding="utf-8")
    versions = [line.strip() for line in body.splitlines() if line.strip()]
    return sorted(versions, key=_semver_key)


def _safe_relpath(name: str) -> Path:
    p = Path(name)
    if p.is_absolute() or any(part in ("..", "") for part in p.parts):
        raise ProxyError(f"unsafe archive path: {name!r}")
    return p


def _extract(archive: zipfile.ZipFile, prefix: str, dest: Path) -> None:
    for info in archive.infolist():
        name = info.filename
        if name.endswith("/"):
            continue
        rel = name[len(prefix) :] if name.startswith(prefix) else name
        target = dest / _safe_relpath(rel)
        target.parent.mkdir(parents=True, exist_ok=True)
        with archive.open(info) as src, open(target, "wb") as out:
            shutil.copyfileobj(src, out)


def fetch_module(path: str, version: str, cfg: ProxyConfig) -> Path:
    """Download and extract path@version; returns the extraction root.

    The archive's standard "{path}@{version}/" top-level prefix is stripped.
    A lock file serializes concurrent fetches of the same pair; a partial
    extraction never becomes visible because the tree is renamed into place
    only once complete.
    """
    if not version:
        raise ProxyError("fetch_module requires a non-empty version")
    escaped = escape_module_path(path)
    target = cfg.cache_dir / f"{escaped}@{version}"
    if target.is_dir():
        return target
    target.parent.mkdir(parents=True, exist_ok=True)
    lock = FileLock(str(target) + ".lock")
    with lock:
        if target.is_dir():  # raced another fetcher
            return target
        resp = _get(f"{cfg.base_url}/{escaped}/@v/{version}.zip", cfg)
        tmp = Path(tempfile.mkdtemp(prefix=".fetch-", dir=target.parent))
        try:
            with tempfile.TemporaryFile(dir=target.parent) as spool:
                spool.write(resp.content)
                spool.seek(0)
                try:
                    with zipfile.ZipFile(spool) as archive:
                        _extract(archive, f"{path}@{version}/", tmp)
                except zipfile.BadZipFile as exc:
                    raise ProxyError(f"bad module archive for {path}@{version}: {exc}") from exc
            os.replace(tmp, target)
        except BaseException:
            shutil.rmtree(tmp, ignore_errors=True)
            raise
    return target
