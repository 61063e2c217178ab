import json
import os
from pathlib import Path
from typing import Iterable, List, Optional, Tuple

from pydantic import BaseModel, ValidationError

from data_models import Factorization, FixedPointProfile, ProfileRecord

FORMAT_TAG = "selfpower-profiles"
FORMAT_VERSION = 1


class RecordFormatError(ValueError):
    pass


class ProfileFile(BaseModel):
    path: str
    lo: Optional[int] = None
    hi: Optional[int] = None
    profiles: List[FixedPointProfile] = []

    def describe(self) -> str:
        if self.profiles:
            span = f"p in [{self.profiles[0].p}, {self.profiles[-1].p}]"
        else:
            span = "no profiles"
        if self.lo is not None:
            span = f"swept [{self.lo}, {self.hi}], {span}"
        return f"{self.path}: {len(self.profiles)} profiles, {span}"


def to_record(profile: FixedPointProfile) -> ProfileRecord:
    return ProfileRecord(
        p=profile.p,
        factors=profile.pm1.factors,
        counts=sorted(profile.counts.items()),
        ord2=profile.ord2,
        pmod8=profile.p_mod_8,
    )


def from_record(record: ProfileRecord) -> FixedPointProfile:
    counts = dict(record.counts)
    return FixedPointProfile(
        p=record.p,
        pm1=Factorization(n=record.p - 1, factors=record.factors),
        counts=counts,
        total=sum(counts.values()),
        ord2=record.ord2,
        p_mod_8=record.pmod8,
    )


def header_line(lo: int, hi: int) -> str:
    return json.dumps(
        {"format": FORMAT_TAG, "version": FORMAT_VERSION, "lo": lo, "hi": hi},
        separators=(",", ":"),
    )


def record_line(profile: FixedPointProfile) -> str:
    return to_record(profile).model_dump_json()


def write_profiles(path: str, lo: int, hi: int, profiles: Iterable[FixedPointProfile]) -> int:
    """
    Header line then one record per profile. Returns the number of records
    written. The file appears at `path` only once every record is written.
    """
    written = 0
    partial = f"{path}.tmp"
    try:
        with open(partial, "w", encoding="utf-8", newline="\n") as out:
            out.write(header_line(lo, hi) + "\n")
            for profile in profiles:
                out.write(record_line(profile) + "\n")
                written += 1
        os.replace(partial, path)
    except BaseException:
        if os.path.exists(partial):
            os.remove(partial)
        raise
    return written


def _parse_header(text: str) -> Optional[Tuple[int, int]]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        return None
    if isinstance(data, dict) and data.get("format") == FORMAT_TAG:
        if data.get("version") != FORMAT_VERSION:
            raise RecordFormatError(f"unsupported profile file version {data.get('version')}")
        return int(data["lo"]), int(data["hi"])
    return None


def read_profiles(path: str) -> ProfileFile:
    """
    Parse a profile file. The header is optional; blank lines are skipped;
    any other malformed line raises RecordFormatError naming the line.
    """
    source = Path(path)
    try:
        lines = source.read_text(encoding="utf-8").splitlines()
    except OSError as e:
        raise RecordFormatError(f"{path}: cannot read: {e}") from e

    result = ProfileFile(path=path)
    profiles: List[FixedPointProfile] = []
    for number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        if number == 1:
            try:
                header = _parse_header(line)
            except (KeyError, TypeError, ValueError) as e:
                raise RecordFormatError(f"{path}:1: bad header: {e}") from e
            if header is not None:
                result.lo, result.hi = header
                continue
        try:
            profiles.append(from_record(ProfileRecord.model_validate_json(line)))
        except ValidationError as e:
            first = e.errors()[0]
            raise RecordFormatError(f"{path}:{number}: malformed record: {first['msg']}") from e
        if len(profiles) > 1 and profiles[-1].p <= profiles[-2].p:
            raise RecordFormatError(f"{path}:{number}: records must be strictly ascending by p")
    result.profiles = profiles
    return result


def merge_files(files: Iterable[ProfileFile]) -> List[FixedPointProfile]:
    """All profiles of several files, ascending by p; a prime may appear only once."""
    merged = sorted((pr for f in files for pr in f.profiles), key=lambda pr: pr.p)
    for a, b in zip(merged, merged[1:]):
        if a.p == b.p:
            raise RecordFormatError(f"prime {a.p} appears in more than one input")
    return merged
