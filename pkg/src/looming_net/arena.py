"""Closed-loop 2D multi-robot arena with onboard collision-sensing pipelines.

Differential-drive agents roam a 70x55 cm walled arena decorated with
black/white vertical stripes. Each agent carries a full model pipeline fed
by a column-raycast pinhole camera; avoidance triggers stop the agent and
turn it in place by a random angle. Contacts and avoidance triggers are
logged to an event ledger from which the two success rates are computed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .config import ModelConfig
from .frontend import DEFAULT_HEIGHT, DEFAULT_WIDTH
from .pipeline import CollisionModel

ARENA_WIDTH_CM = 70.0
ARENA_HEIGHT_CM = 55.0
ROBOT_RADIUS_CM = 2.0
ROBOT_HEIGHT_CM = 3.0
ROBOT_LUMINANCE = 40
WALL_HEIGHT_CM = 4.0
WALL_STRIPE_PERIOD_CM = 5.0
FLOOR_LUMINANCE = 160
CAMERA_HEIGHT_CM = 1.5
HFOV_DEG = 70.0
TIME_STEP_S = 1.0 / 30.0
MAX_SPEED_CM_S = 35.0
SPEED_RANGE_CM_S = (6.0, 10.0)
TURN_RATE_DEG_S = 240.0

# Arena sensitivity calibration. The stimulus-facing defaults in ModelConfig
# assume one moderate-contrast dark square; the arena camera instead sees
# full-contrast stripes across the whole field, so the sigmoid scales are
# recalibrated to trigger at collision-relevant proximity, and the veto
# window is shortened so a vetoed frame does not mask an immediately
# following genuine looming frame.
ARENA_SCALE_LGMD = 0.53
ARENA_SCALE_LPTC = 25.0
ARENA_SUPPRESSION_WINDOW = 1

# Avoidance-trigger classification: a robot counts as the trigger cause when
# it is within this range; it counts as approaching (vs translating) when its
# bearing is inside this cone and the range is closing.
CLASSIFY_RANGE_CM = 25.0
CLASSIFY_BEARING_DEG = 25.0


class AgentState(Enum):
    FORWARD = "FORWARD"
    AVOIDING = "AVOIDING"


class EventKind(Enum):
    CR = "CR"  # collided with a robot
    CP = "CP"  # collided with a wall (periphery)
    AA = "AA"  # avoided an approaching robot
    AT = "AT"  # avoidance triggered by a translating robot
    AP = "AP"  # avoided the periphery (no robot in range)


@dataclass(frozen=True)
class Event:
    frame: int
    agent_id: int
    kind: EventKind
    context: str = ""


@dataclass
class EventLedger:
    events: list[Event] = field(default_factory=list)

    def count(self, kind: EventKind) -> int:
        return sum(1 for e in self.events if e.kind is kind)

    def append(self, event: Event) -> None:
        self.events.append(event)


def success_rates(ledger: EventLedger) -> tuple[float | None, float | None]:
    """(SR1, SR2) percentages; a rate with an empty denominator is None."""
    ap, cp = ledger.count(EventKind.AP), ledger.count(EventKind.CP)
    aa, at, cr = (ledger.count(EventKind.AA), ledger.count(EventKind.AT),
                  ledger.count(EventKind.CR))
    sr1 = 100.0 * ap / (ap + cp) if ap + cp else None
    sr2 = 100.0 * aa / (aa + at + cr) if aa + at + cr else None
    return sr1, sr2


class RobotAgent:
    """One differential-drive robot: pose, controller state, onboard pipeline."""

    def __init__(self, agent_id: int, x: float, y: float, heading: float,
                 linear_speed: float, config: ModelConfig | None = None,
                 rng_seed=0, pipeline_enabled: bool = True):
        if not 0.0 <= linear_speed <= MAX_SPEED_CM_S:
            raise ValueError(f"linear speed {linear_speed} outside [0, {MAX_SPEED_CM_S}]")
        self.agent_id = agent_id
        self.x = x
        self.y = y
        self.heading = heading
        self.linear_speed = linear_speed
        self.radius = ROBOT_RADIUS_CM
        self.state = AgentState.FORWARD
        self.turn_remaining = 0.0  # radians left of the current avoidance turn
        self.turn_sign = 1.0
        self.rng = np.random.default_rng(rng_seed)
        self.pipeline = CollisionModel(config) if pipeline_enabled else None
        self.velocity = (0.0, 0.0)  # realized cm/s over the last step

    def start_avoidance_turn(self) -> None:
        """Stop and turn in place by a uniform [90, 180] degree random angle."""
        angle = math.radians(self.rng.uniform(90.0, 180.0))
        self.turn_sign = 1.0 if self.rng.random() < 0.5 else -1.0
        self.turn_remaining = angle
        self.state = AgentState.AVOIDING

    def advance(self, dt: float) -> None:
        """Integrate one time step of the current motion command."""
        if self.state is AgentState.AVOIDING:
            step = min(self.turn_remaining, math.radians(TURN_RATE_DEG_S) * dt)
            self.heading += self.turn_sign * step
            self.turn_remaining -= step
            self.velocity = (0.0, 0.0)
            if self.turn_remaining <= 1e-12:
                self.state = AgentState.FORWARD
        else:
            vx = self.linear_speed * math.cos(self.heading)
            vy = self.linear_speed * math.sin(self.heading)
            self.x += vx * dt
            self.y += vy * dt
            self.velocity = (vx, vy)


@dataclass
class ArenaWorld:
    agents: list[RobotAgent]
    width: float = ARENA_WIDTH_CM
    height: float = ARENA_HEIGHT_CM
    time_step: float = TIME_STEP_S
    clock: int = 0


# One focal length serves both axes; columns index bearing left-positive.
_FOCAL_PX = (DEFAULT_WIDTH / 2.0) / math.tan(math.radians(HFOV_DEG / 2.0))
_COLUMN_BEARINGS = -np.arctan(
    (np.arange(DEFAULT_WIDTH) + 0.5 - DEFAULT_WIDTH / 2.0) / _FOCAL_PX)
_ROW_INDICES = np.arange(DEFAULT_HEIGHT, dtype=np.float32)[:, None]


def _wall_hits(x: float, y: float, dx: np.ndarray, dy: np.ndarray,
               width: float, height: float) -> tuple[np.ndarray, np.ndarray]:
    """Per-ray distance to the nearest wall and |hit - wall center| along it.

    The along-wall coordinate is measured from the wall's midpoint so the
    stripe pattern is symmetric per wall and mirrored worlds render mirrored
    frames.
    """
    t_best = np.full(dx.shape, np.inf)
    along = np.zeros(dx.shape)
    # (axis value, is_x_wall) for the four walls
    for bound, x_wall in ((0.0, True), (width, True), (0.0, False), (height, False)):
        d = dx if x_wall else dy
        origin = x if x_wall else y
        with np.errstate(divide="ignore"):
            t = np.where(np.abs(d) > 1e-12, (bound - origin) / d, np.inf)
        hit = (y + t * dy) if x_wall else (x + t * dx)
        limit = height if x_wall else width
        ok = (t > 1e-9) & (hit >= -1e-9) & (hit <= limit + 1e-9) & (t < t_best)
        t_best = np.where(ok, t, t_best)
        along = np.where(ok, np.abs(hit - limit / 2.0), along)
    return t_best, along


def _circle_hits(x: float, y: float, dx: np.ndarray, dy: np.ndarray,
                 cx: float, cy: float, r: float) -> np.ndarray:
    """Per-ray distance to a circle (inf where the ray misses it)."""
    ox, oy = cx - x, cy - y
    proj = ox * dx + oy * dy
    perp2 = (ox * ox + oy * oy) - proj * proj
    disc = r * r - perp2
    with np.errstate(invalid="ignore"):
        t = proj - np.sqrt(np.maximum(disc, 0.0))
    return np.where((disc >= 0.0) & (t > 1e-9), t, np.inf)


def render_camera(world: ArenaWorld, agent: RobotAgent) -> np.ndarray:
    """One 99x72 grayscale frame from the agent's pinhole camera.

    Column raycast with a 70 degree horizontal FOV: other robots are dark
    cylinders, walls carry black/white vertical stripes, floor and ceiling
    are uniform gray. Pure function of the world snapshot.
    """
    dirs = agent.heading + _COLUMN_BEARINGS
    dx, dy = np.cos(dirs), np.sin(dirs)

    t, along = _wall_hits(agent.x, agent.y, dx, dy, world.width, world.height)
    stripe = (np.floor(along / (WALL_STRIPE_PERIOD_CM / 2.0)).astype(np.int64) % 2)
    lum = np.where(stripe == 0, 255.0, 0.0)
    obj_height = np.full(dx.shape, WALL_HEIGHT_CM)

    for other in world.agents:
        if other is agent:
            continue
        t_robot = _circle_hits(agent.x, agent.y, dx, dy,
                               other.x, other.y, other.radius)
        nearer = t_robot < t
        if nearer.any():
            t = np.where(nearer, t_robot, t)
            lum = np.where(nearer, float(ROBOT_LUMINANCE), lum)
            obj_height = np.where(nearer, ROBOT_HEIGHT_CM, obj_height)

    cy_px = DEFAULT_HEIGHT / 2.0
    safe_t = np.maximum(t, 1e-6)
    top = cy_px - _FOCAL_PX * (obj_height - CAMERA_HEIGHT_CM) / safe_t
    bottom = cy_px + _FOCAL_PX * CAMERA_HEIGHT_CM / safe_t
    mask = (_ROW_INDICES >= top) & (_ROW_INDICES < bottom)
    frame = np.where(mask, lum, float(FLOOR_LUMINANCE))
    return frame.astype(np.uint8)


def classify_trigger(world: ArenaWorld, agent: RobotAgent) -> EventKind:
    """Label an avoidance trigger AA / AT / AP from the world snapshot.

    The nearest robot inside the camera FOV and within CLASSIFY_RANGE_CM is
    the presumed cause; none means the periphery was avoided. A cause with
    closing range inside the bearing cone is approaching, else translating.
    """
    half_fov = math.radians(HFOV_DEG / 2.0)
    cause = None
    cause_dist = CLASSIFY_RANGE_CM
    for other in world.agents:
        if other is agent:
            continue
        ox, oy = other.x - agent.x, other.y - agent.y
        dist = math.hypot(ox, oy)
        if dist > cause_dist:
            continue
        bearing = _angle_wrap(math.atan2(oy, ox) - agent.heading)
        if abs(bearing) > half_fov:
            continue
        cause, cause_dist = other, dist
    if cause is None:
        return EventKind.AP
    ox, oy = cause.x - agent.x, cause.y - agent.y
    dist = math.hypot(ox, oy)
    rvx = cause.velocity[0] - agent.velocity[0]
    rvy = cause.velocity[1] - agent.velocity[1]
    closing_speed = -(ox * rvx + oy * rvy) / max(dist, 1e-9)
    bearing = _angle_wrap(math.atan2(oy, ox) - agent.heading)
    if closing_speed > 0.5 and abs(bearing) <= math.radians(CLASSIFY_BEARING_DEG):
        return EventKind.AA
    return EventKind.AT


def _angle_wrap(a: float) -> float:
    return (a + math.pi) % (2.0 * math.pi) - math.pi


def arena_model_config(variant: str = "HYBRID") -> ModelConfig:
    """Model config with the sensitivity calibration for arena camera streams."""
    return ModelConfig(model_variant=variant).replace(
        neurons_scale_lgmd1=ARENA_SCALE_LGMD,
        neurons_scale_lgmd2=ARENA_SCALE_LGMD,
        neurons_scale_lptc=ARENA_SCALE_LPTC,
        arbiter_suppression_window=ARENA_SUPPRESSION_WINDOW)


class ArenaSimulation:
    """Owns one world, its event ledger, and the per-frame control loop."""

    def __init__(self, n_agents: int, seed: int = 0,
                 config: ModelConfig | None = None,
                 pipeline_enabled: bool = True,
                 agents: list[RobotAgent] | None = None):
        self.config = (config if config is not None else arena_model_config()).validate()
        if agents is None:
            agents = self._spawn(n_agents, seed, pipeline_enabled)
        self.world = ArenaWorld(agents=agents)
        self.ledger = EventLedger()
        self._wall_contact = [False] * len(agents)
        self._pair_contact: set[tuple[int, int]] = set()

    def _spawn(self, n_agents: int, seed: int, pipeline_enabled: bool):
        rng = np.random.default_rng(seed)
        agents: list[RobotAgent] = []
        margin = ROBOT_RADIUS_CM + 1.0
        while len(agents) < n_agents:
            x = rng.uniform(margin, ARENA_WIDTH_CM - margin)
            y = rng.uniform(margin, ARENA_HEIGHT_CM - margin)
            if any(math.hypot(a.x - x, a.y - y) < 4.0 * ROBOT_RADIUS_CM
                   for a in agents):
                continue
            heading = rng.uniform(-math.pi, math.pi)
            speed = rng.uniform(*SPEED_RANGE_CM_S)
            agents.append(RobotAgent(
                agent_id=len(agents), x=x, y=y, heading=heading,
                linear_speed=speed, config=self.config,
                rng_seed=[seed, len(agents)],
                pipeline_enabled=pipeline_enabled))
        return agents

    def step(self) -> None:
        world = self.world
        frame_no = world.clock
        # Sense on a frozen snapshot: every agent sees the same world state.
        triggers = []
        for agent in world.agents:
            trig = False
            if agent.pipeline is not None:
                frame = render_camera(world, agent)
                trig = agent.pipeline.process(frame).trigger
            triggers.append(trig)

        for agent, trig in zip(world.agents, triggers):
            if trig and agent.state is AgentState.FORWARD:
                self.ledger.append(Event(frame_no, agent.agent_id,
                                         classify_trigger(world, agent)))
                agent.start_avoidance_turn()
            agent.advance(world.time_step)

        self._resolve_contacts(frame_no)
        world.clock += 1

    def _resolve_contacts(self, frame_no: int) -> None:
        world = self.world
        agents = world.agents
        for i, a in enumerate(agents):
            for j in range(i + 1, len(agents)):
                b = agents[j]
                dx, dy = b.x - a.x, b.y - a.y
                dist = math.hypot(dx, dy)
                min_dist = a.radius + b.radius
                touching = dist < min_dist
                if touching:
                    if (i, j) not in self._pair_contact:
                        self.ledger.append(Event(frame_no, a.agent_id, EventKind.CR,
                                                 context=f"with={b.agent_id}"))
                        self.ledger.append(Event(frame_no, b.agent_id, EventKind.CR,
                                                 context=f"with={a.agent_id}"))
                        self._pair_contact.add((i, j))
                        for agent in (a, b):
                            if agent.state is AgentState.FORWARD:
                                agent.start_avoidance_turn()
                    # Push apart symmetrically to just-touching.
                    if dist < 1e-9:
                        dx, dy, dist = 1.0, 0.0, 1.0
                    push = (min_dist - dist) / 2.0 + 1e-6
                    a.x -= push * dx / dist
                    a.y -= push * dy / dist
                    b.x += push * dx / dist
                    b.y += push * dy / dist
                else:
                    self._pair_contact.discard((i, j))
            hit_wall = (a.x < a.radius or a.x > world.width - a.radius
                        or a.y < a.radius or a.y > world.height - a.radius)
            if hit_wall:
                if not self._wall_contact[i]:
                    self.ledger.append(Event(frame_no, a.agent_id, EventKind.CP))
                    if a.state is AgentState.FORWARD:
                        a.start_avoidance_turn()
                a.x = min(max(a.x, a.radius), world.width - a.radius)
                a.y = min(max(a.y, a.radius), world.height - a.radius)
            self._wall_contact[i] = hit_wall
        self._relax_overlaps()

    def _relax_overlaps(self) -> None:
        """Settle residual overlaps where wall clamping undid a push-apart."""
        world = self.world
        agents = world.agents
        # wall clamping undoes half of each symmetric push, so convergence
        # is geometric; the loop exits early once everything is separated
        for _ in range(24):
            moved = False
            for i, a in enumerate(agents):
                for j in range(i + 1, len(agents)):
                    b = agents[j]
                    dx, dy = b.x - a.x, b.y - a.y
                    dist = math.hypot(dx, dy)
                    min_dist = a.radius + b.radius
                    if dist < min_dist:
                        if dist < 1e-9:
                            dx, dy, dist = 1.0, 0.0, 1.0
                        push = (min_dist - dist) / 2.0 + 1e-6
                        a.x -= push * dx / dist
                        a.y -= push * dy / dist
                        b.x += push * dx / dist
                        b.y += push * dy / dist
                        moved = True
                a.x = min(max(a.x, a.radius), world.width - a.radius)
                a.y = min(max(a.y, a.radius), world.height - a.radius)
            if not moved:
                break

    def run(self, n_frames: int) -> EventLedger:
        for _ in range(n_frames):
            self.step()
        return self.ledger


def run_experiment(n_agents: int, seed: int, n_frames: int,
                   variant: str = "HYBRID",
                   config: ModelConfig | None = None) -> EventLedger:
    """Run one seeded closed-loop trial and return its event ledger."""
    if config is None:
        config = arena_model_config(variant)
    sim = ArenaSimulation(n_agents=n_agents, seed=seed, config=config)
    return sim.run(n_frames)
