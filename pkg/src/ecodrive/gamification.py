"""Gamification engine: trips feed points, badges, knowledge cards,
missions, trophies, and avatar unlocks.

Profiles are immutable values and every transition is a pure function, so a
driver's profile can always be reproduced by replaying their trip and
mission-accept history from an empty profile. The persistence layer relies on
that property for crash recovery.

Thresholds live in a rules file (see `parse_rules` for the format), not in
code. `default_rules()` loads the one shipped in ecodrive/data.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Callable

from ecodrive.errors import (
    BadRuleSet,
    DuplicateTrip,
    MissionNotAvailable,
    UnknownDriver,
    UnknownMission,
)
from ecodrive.scoring.score import TripScore


class MissionState(Enum):
    LOCKED = "locked"
    AVAILABLE = "available"
    ACCEPTED = "accepted"
    COMPLETED = "completed"


@dataclass(frozen=True, slots=True)
class Event:
    """One profile state change, in the order it happened."""

    kind: str
    subject: str
    value: int | None = None

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "subject": self.subject}
        if self.value is not None:
            d["value"] = self.value
        return d


@dataclass(frozen=True, slots=True)
class CountRule:
    """Award `award_id` once `count` trips have scored at least `threshold`."""

    award_id: str
    count: int
    threshold: int


@dataclass(frozen=True, slots=True)
class Mission:
    mission_id: str
    prerequisite_card: str
    objective_op: str      # one of score>= / eco>= / agg<= / abrupt<=
    objective_value: float
    trophy_id: str

    def objective_met(self, score: TripScore) -> bool:
        if self.objective_op == "score>=":
            return score.trip_ecoscore >= self.objective_value
        if self.objective_op == "eco>=":
            return score.eco_mean >= self.objective_value
        if self.objective_op == "agg<=":
            return score.agg_mean <= self.objective_value
        if self.objective_op == "abrupt<=":
            abrupt = sum(w.features.abrupt_brakes for w in score.windows)
            return abrupt <= self.objective_value
        raise BadRuleSet(f"unknown objective operator {self.objective_op!r}")

    def describe_objective(self) -> str:
        names = {
            "score>=": "trip ecoscore at least",
            "eco>=": "eco component at least",
            "agg<=": "aggressiveness at most",
            "abrupt<=": "abrupt brakes at most",
        }
        v = self.objective_value
        return f"{names[self.objective_op]} {v:g}"


@dataclass(frozen=True, slots=True)
class RuleSet:
    badges: tuple[CountRule, ...]
    cards: tuple[CountRule, ...]
    missions: tuple[Mission, ...]
    avatar_parts: tuple[tuple[str, str], ...]  # (trophy_id, part_id)
    level_points: int = 500

    def validate(self) -> None:
        if self.level_points <= 0:
            raise BadRuleSet("level_points must be positive")
        card_ids = {c.award_id for c in self.cards}
        if len(card_ids) != len(self.cards):
            raise BadRuleSet("duplicate card id")
        if len({b.award_id for b in self.badges}) != len(self.badges):
            raise BadRuleSet("duplicate badge id")
        mission_ids = [m.mission_id for m in self.missions]
        if len(set(mission_ids)) != len(mission_ids):
            raise BadRuleSet("duplicate mission id")
        trophy_ids = [m.trophy_id for m in self.missions]
        if len(set(trophy_ids)) != len(trophy_ids):
            raise BadRuleSet("trophy ids must be unique per mission")
        for m in self.missions:
            if m.prerequisite_card not in card_ids:
                raise BadRuleSet(
                    f"mission {m.mission_id!r} requires unknown card "
                    f"{m.prerequisite_card!r}"
                )
        for trophy_id, _part in self.avatar_parts:
            if trophy_id not in trophy_ids:
                raise BadRuleSet(f"avatar part bound to unknown trophy {trophy_id!r}")

    def mission(self, mission_id: str) -> Mission:
        for m in self.missions:
            if m.mission_id == mission_id:
                return m
        raise UnknownMission(mission_id)


@dataclass(frozen=True, slots=True)
class PlayerProfile:
    driver_id: str
    skill_points: int = 0
    level: int = 1
    badges: frozenset[str] = frozenset()
    knowledge_cards: frozenset[str] = frozenset()
    missions: tuple[tuple[str, MissionState], ...] = ()
    trophies: frozenset[str] = frozenset()
    avatar_parts: frozenset[str] = frozenset()
    trip_history: tuple[tuple[str, int], ...] = ()

    def mission_state(self, mission_id: str) -> MissionState:
        for mid, state in self.missions:
            if mid == mission_id:
                return state
        raise UnknownMission(mission_id)

    def to_dict(self) -> dict:
        return {
            "driver_id": self.driver_id,
            "skill_points": self.skill_points,
            "level": self.level,
            "badges": sorted(self.badges),
            "knowledge_cards": sorted(self.knowledge_cards),
            "missions": {mid: state.value for mid, state in self.missions},
            "trophies": sorted(self.trophies),
            "avatar_parts": sorted(self.avatar_parts),
            "trip_history": [[tid, score] for tid, score in self.trip_history],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PlayerProfile":
        return cls(
            driver_id=d["driver_id"],
            skill_points=d["skill_points"],
            level=d["level"],
            badges=frozenset(d["badges"]),
            knowledge_cards=frozenset(d["knowledge_cards"]),
            missions=tuple(
                (mid, MissionState(state)) for mid, state in d["missions"].items()
            ),
            trophies=frozenset(d["trophies"]),
            avatar_parts=frozenset(d["avatar_parts"]),
            trip_history=tuple((tid, score) for tid, score in d["trip_history"]),
        )


def new_profile(driver_id: str, rules: RuleSet) -> PlayerProfile:
    missions = tuple((m.mission_id, MissionState.LOCKED) for m in rules.missions)
    return PlayerProfile(driver_id=driver_id, missions=missions)


def _count_at_or_above(history: tuple[tuple[str, int], ...], threshold: int) -> int:
    return sum(1 for _tid, score in history if score >= threshold)


def _set_mission(
    missions: tuple[tuple[str, MissionState], ...], mission_id: str, state: MissionState
) -> tuple[tuple[str, MissionState], ...]:
    return tuple(
        (mid, state if mid == mission_id else old) for mid, old in missions
    )


def apply_trip(
    profile: PlayerProfile, score: TripScore, rules: RuleSet
) -> tuple[PlayerProfile, tuple[Event, ...]]:
    """Record one scored trip and run the full award chain.

    Returns the updated profile plus the ordered list of everything that
    changed, ready for a UI feed. Pure and deterministic.
    """
    if score.driver_id != profile.driver_id:
        raise UnknownDriver(
            f"score for {score.driver_id!r} applied to {profile.driver_id!r}"
        )
    if any(tid == score.trip_id for tid, _ in profile.trip_history):
        raise DuplicateTrip(score.trip_id)

    events: list[Event] = []
    history = profile.trip_history + ((score.trip_id, score.trip_ecoscore),)
    events.append(Event("trip_recorded", score.trip_id, score.trip_ecoscore))

    points = profile.skill_points + score.trip_ecoscore
    if score.trip_ecoscore > 0:
        events.append(Event("points_awarded", score.trip_id, score.trip_ecoscore))
    level = 1 + points // rules.level_points
    if level > profile.level:
        events.append(Event("level_up", profile.driver_id, level))

    badges = set(profile.badges)
    for rule in rules.badges:
        if rule.award_id in badges:
            continue
        if _count_at_or_above(history, rule.threshold) >= rule.count:
            badges.add(rule.award_id)
            events.append(Event("badge_earned", rule.award_id))

    cards = set(profile.knowledge_cards)
    for rule in rules.cards:
        if rule.award_id in cards:
            continue
        if _count_at_or_above(history, rule.threshold) >= rule.count:
            cards.add(rule.award_id)
            events.append(Event("card_awarded", rule.award_id))

    missions = profile.missions
    for m in rules.missions:
        if (
            profile.mission_state(m.mission_id) is MissionState.LOCKED
            and m.prerequisite_card in cards
        ):
            missions = _set_mission(missions, m.mission_id, MissionState.AVAILABLE)
            events.append(Event("mission_available", m.mission_id))

    trophies = set(profile.trophies)
    parts = set(profile.avatar_parts)
    for m in rules.missions:
        if profile.mission_state(m.mission_id) is not MissionState.ACCEPTED:
            continue
        if not m.objective_met(score):
            continue
        missions = _set_mission(missions, m.mission_id, MissionState.COMPLETED)
        events.append(Event("mission_completed", m.mission_id))
        trophies.add(m.trophy_id)
        events.append(Event("trophy_earned", m.trophy_id))
        for trophy_id, part_id in rules.avatar_parts:
            if trophy_id == m.trophy_id and part_id not in parts:
                parts.add(part_id)
                events.append(Event("avatar_part_unlocked", part_id))

    updated = replace(
        profile,
        skill_points=points,
        level=level,
        badges=frozenset(badges),
        knowledge_cards=frozenset(cards),
        missions=missions,
        trophies=frozenset(trophies),
        avatar_parts=frozenset(parts),
        trip_history=history,
    )
    return updated, tuple(events)


def accept_mission(profile: PlayerProfile, mission_id: str) -> PlayerProfile:
    state = profile.mission_state(mission_id)  # raises UnknownMission
    if state is not MissionState.AVAILABLE:
        raise MissionNotAvailable(f"mission {mission_id!r} is {state.value}")
    return replace(
        profile,
        missions=_set_mission(profile.missions, mission_id, MissionState.ACCEPTED),
    )


def leaderboard(
    profiles: list[PlayerProfile] | tuple[PlayerProfile, ...], n: int
) -> list[tuple[str, int, int, int]]:
    """Top-n (driver_id, skill_points, badge_count, trophy_count).

    Points descending, trophies break ties, driver id makes the order total.
    """
    entries = [
        (p.driver_id, p.skill_points, len(p.badges), len(p.trophies))
        for p in profiles
    ]
    entries.sort(key=lambda e: (-e[1], -e[3], e[0]))
    return entries[:n]


# ---------------------------------------------------------------------------
# rules file codec
#
# Line-oriented, `#` comments. Directives:
#   badge <id> <count> <threshold>        count trips scoring >= threshold
#   card <id> <count> <threshold>         same trigger, awards a knowledge card
#   mission <id> <card> <objective> <trophy>
#       objective: score>=N | eco>=X | agg<=X | abrupt<=N
#   avatar <trophy> <part>                part unlocked with that trophy
#   level_points <n>                      points per level step
# ---------------------------------------------------------------------------

_OBJECTIVE_OPS = ("score>=", "eco>=", "agg<=", "abrupt<=")


def _parse_objective(token: str, lineno: int) -> tuple[str, float]:
    for op in _OBJECTIVE_OPS:
        if token.startswith(op):
            try:
                return op, float(token[len(op):])
            except ValueError as exc:
                raise BadRuleSet(f"bad objective value in {token!r}", lineno) from exc
    raise BadRuleSet(f"unknown objective {token!r}", lineno)


def parse_rules(text: str) -> RuleSet:
    badges: list[CountRule] = []
    cards: list[CountRule] = []
    missions: list[Mission] = []
    avatars: list[tuple[str, str]] = []
    level_points = 500

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kind, args = tokens[0], tokens[1:]
        try:
            if kind in ("badge", "card"):
                if len(args) != 3:
                    raise BadRuleSet(f"{kind} takes 3 arguments", lineno)
                rule = CountRule(args[0], int(args[1]), int(args[2]))
                if rule.count <= 0:
                    raise BadRuleSet(f"{kind} count must be positive", lineno)
                (badges if kind == "badge" else cards).append(rule)
            elif kind == "mission":
                if len(args) != 4:
                    raise BadRuleSet("mission takes 4 arguments", lineno)
                op, value = _parse_objective(args[2], lineno)
                missions.append(Mission(args[0], args[1], op, value, args[3]))
            elif kind == "avatar":
                if len(args) != 2:
                    raise BadRuleSet("avatar takes 2 arguments", lineno)
                avatars.append((args[0], args[1]))
            elif kind == "level_points":
                if len(args) != 1:
                    raise BadRuleSet("level_points takes 1 argument", lineno)
                level_points = int(args[0])
            else:
                raise BadRuleSet(f"unknown directive {kind!r}", lineno)
        except ValueError as exc:
            raise BadRuleSet(f"unparsable number in {kind} rule ({exc})", lineno) from exc

    ruleset = RuleSet(
        badges=tuple(badges),
        cards=tuple(cards),
        missions=tuple(missions),
        avatar_parts=tuple(avatars),
        level_points=level_points,
    )
    ruleset.validate()
    return ruleset


def load_rules(path: str | Path) -> RuleSet:
    return parse_rules(Path(path).read_text(encoding="utf-8"))


def default_rules() -> RuleSet:
    text = resources.files("ecodrive.data").joinpath("default.rules").read_text("utf-8")
    return parse_rules(text)
