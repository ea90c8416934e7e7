"""Participant records, conference editions, and per-community distributions.

A conference edition holds one record per (person, role) row. Three
communities contribute to every indicator: keynote speakers, authors and
organisers. ``breakdown`` tallies a chosen diversity dimension (gender,
country, continent or sector) into one :class:`CategoryDistribution` per
community. Editions are immutable after construction and safe to read
concurrently.
"""

from __future__ import annotations

import random
import re
from collections import Counter
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Mapping

from .errors import DiversityError
from .indices import CategoryDistribution

_COUNTRY_CODE = re.compile(r"^[A-Z]{2}$")

#: Diversity dimensions understood by ``breakdown``.
DIMENSIONS = ("gender", "country", "continent", "sector")

#: Policies for records whose label along a dimension is missing.
UNKNOWN_POLICIES = ("exclude", "as_category")

#: Synthetic category used by the ``as_category`` policy.
UNKNOWN_CATEGORY = "unknown"


class Role(str, Enum):
    AUTHOR = "author"
    KEYNOTE = "keynote"
    ORGANISER = "organiser"


class GenderLabel(str, Enum):
    MALE = "male"
    FEMALE = "female"
    OTHER = "other"
    #: Inference failed or was not attempted; distinct from OTHER.
    UNKNOWN = "unknown"


class SectorLabel(str, Enum):
    ACADEMIA = "academia"
    INDUSTRY = "industry"
    RESEARCH_CENTRE = "research_centre"


@dataclass(frozen=True)
class ParticipantRecord:
    """One person-role row of a conference edition.

    When several affiliations are present, only the first one drives
    downstream sector labeling. ``continent`` is filled by geography
    enrichment, never parsed from input.
    """

    conference: str
    year: int
    role: Role
    given_name: str
    family_name: str
    affiliations: tuple[str, ...]
    country: str | None = None
    sector: SectorLabel | None = None
    gender: GenderLabel = GenderLabel.UNKNOWN
    continent: str | None = None
    paper_id: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "affiliations", tuple(self.affiliations))
        if not self.conference:
            raise DiversityError("conference acronym must be non-empty")
        if not 1900 <= self.year <= 2100:
            raise DiversityError(f"year {self.year} outside [1900, 2100]")
        if not self.affiliations or any(not a for a in self.affiliations):
            raise DiversityError("affiliations must be a non-empty list of non-empty strings")
        if not (self.given_name or self.family_name) and self.gender is GenderLabel.UNKNOWN:
            raise DiversityError("name parts may be empty only when gender is pre-labeled")
        if self.country is not None and not _COUNTRY_CODE.match(self.country):
            raise DiversityError(f"country must be an ISO 3166-1 alpha-2 code, got {self.country!r}")


@dataclass(frozen=True)
class ConferenceEdition:
    """All records of one (conference, year).

    The same person may legitimately appear under several roles; no
    deduplication happens across roles.
    """

    conference: str
    year: int
    records: tuple[ParticipantRecord, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))
        for rec in self.records:
            if rec.conference != self.conference or rec.year != self.year:
                raise DiversityError(
                    f"record for {rec.conference} {rec.year} does not belong to "
                    f"{self.conference} {self.year}"
                )

    def of_role(self, role: Role) -> tuple[ParticipantRecord, ...]:
        return tuple(r for r in self.records if r.role is role)


@dataclass(frozen=True)
class CommunityBreakdown:
    """Per-community distributions of one diversity dimension."""

    dimension: str
    per_community: Mapping[Role, CategoryDistribution]

    def __post_init__(self):
        if self.dimension not in DIMENSIONS:
            raise DiversityError(f"unknown dimension {self.dimension!r}")
        missing = [r.value for r in Role if r not in self.per_community]
        if missing:
            raise DiversityError(f"breakdown is missing communities: {', '.join(missing)}")
        object.__setattr__(self, "per_community", dict(self.per_community))


def _dimension_label(record: ParticipantRecord, dimension: str) -> str | None:
    if dimension == "gender":
        return None if record.gender is GenderLabel.UNKNOWN else record.gender.value
    if dimension == "country":
        return record.country
    if dimension == "continent":
        return record.continent
    if dimension == "sector":
        return None if record.sector is None else record.sector.value
    raise DiversityError(f"unknown dimension {dimension!r}")


def breakdown(
    edition: ConferenceEdition,
    dimension: str,
    unknown_policy: str = "exclude",
    *,
    dedup: bool = True,
) -> CommunityBreakdown:
    """Tally one diversity dimension into a distribution per community.

    Records with a missing label are dropped (``exclude``, the default) or
    counted under a synthetic ``unknown`` category (``as_category``). With
    ``dedup`` on, a person appearing on several papers is counted once per
    distinct (given name, family name, first affiliation) triple within a
    role; records without any name part are never deduplicated. The result
    is deterministic and invariant under record reordering: categories are
    sorted alphabetically.
    """
    if dimension not in DIMENSIONS:
        raise DiversityError(f"unknown dimension {dimension!r}")
    if unknown_policy not in UNKNOWN_POLICIES:
        raise DiversityError(f"unknown policy {unknown_policy!r}")
    if not edition.records:
        raise DiversityError(f"edition {edition.conference} {edition.year} has no records")

    per_community: dict[Role, CategoryDistribution] = {}
    for role in Role:
        tally: Counter[str] = Counter()
        seen: set[tuple[str, str, str]] = set()
        for rec in edition.records:
            if rec.role is not role:
                continue
            if dedup and (rec.given_name or rec.family_name):
                key = (rec.given_name, rec.family_name, rec.affiliations[0])
                if key in seen:
                    continue
                seen.add(key)
            label = _dimension_label(rec, dimension)
            if label is None:
                if unknown_policy == "exclude":
                    continue
                label = UNKNOWN_CATEGORY
            tally[label] += 1
        categories = tuple(sorted(tally))
        per_community[role] = CategoryDistribution(
            categories, tuple(float(tally[c]) for c in categories)
        )
    return CommunityBreakdown(dimension, per_community)


def sample_authors(edition: ConferenceEdition, fraction: float, seed: int) -> ConferenceEdition:
    """Keep a seed-deterministic random subset of the author records.

    Author records sharing a paper identifier stay together, mirroring a
    sampling of papers rather than of individual authors; records without
    an identifier are sampled independently. Keynotes and organisers pass
    through unchanged. ``fraction=1`` is the identity.
    """
    if not 0.0 < fraction <= 1.0:
        raise DiversityError(f"sample fraction must be in (0, 1], got {fraction}")
    if fraction == 1.0:
        return edition

    groups: dict[object, list[ParticipantRecord]] = {}
    order: list[object] = []
    for idx, rec in enumerate(edition.records):
        if rec.role is not Role.AUTHOR:
            continue
        key = ("paper", rec.paper_id) if rec.paper_id else ("record", idx)
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append(rec)

    keep_count = int(len(order) * fraction + 0.5)
    rng = random.Random(seed)
    kept = set(rng.sample(order, keep_count)) if keep_count else set()

    records = []
    for idx, rec in enumerate(edition.records):
        if rec.role is not Role.AUTHOR:
            records.append(rec)
            continue
        key = ("paper", rec.paper_id) if rec.paper_id else ("record", idx)
        if key in kept:
            records.append(rec)
    return ConferenceEdition(edition.conference, edition.year, tuple(records))
