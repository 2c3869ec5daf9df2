import type { ApiClient } from "./api";
import type { EgoPayload, GraphPayload } from "./types";

export type Mode = "social" | "ego";

export interface ViewState {
  mode: Mode;
  threshold: number;
  focus: number | null;
  densityCap: boolean;
}

export const THRESHOLD_MIN = 0;
export const THRESHOLD_MAX = 0.5;

export function clampThreshold(value: number): number {
  if (Number.isNaN(value)) return THRESHOLD_MIN;
  return Math.min(THRESHOLD_MAX, Math.max(THRESHOLD_MIN, value));
}

/**
 * Trailing-edge throttle: the first call fires immediately, later calls
 * are coalesced to at most one per `ms`, and the last value always lands.
 */
export function throttled<A extends unknown[]>(
  ms: number,
  fn: (...args: A) => void,
): (...args: A) => void {
  let lastFired = -Infinity;
  let timer: ReturnType<typeof setTimeout> | null = null;
  let pendingArgs: A | null = null;
  return (...args: A) => {
    const now = Date.now();
    if (now - lastFired >= ms && timer === null) {
      lastFired = now;
      fn(...args);
      return;
    }
    pendingArgs = args;
    if (timer === null) {
      timer = setTimeout(() => {
        timer = null;
        lastFired = Date.now();
        if (pendingArgs !== null) {
          const args = pendingArgs;
          pendingArgs = null;
          fn(...args);
        }
      }, ms - (now - lastFired));
    }
  };
}

/**
 * View-model for the explorer: holds mode/threshold/focus, fetches the
 * matching payloads and pushes them to subscribers. Stale responses are
 * discarded by request token, so the latest request always wins. The
 * graph payload is fetched in both modes (the panel coloring needs the
 * community assignment); the ego payload only in ego mode.
 */
export class Store {
  readonly state: ViewState = {
    mode: "social",
    threshold: THRESHOLD_MAX,
    focus: null,
    densityCap: false,
  };

  private token = 0;
  private settled: Promise<void> = Promise.resolve();
  private graphListeners: Array<(payload: GraphPayload) => void> = [];
  private egoListeners: Array<(payload: EgoPayload) => void> = [];
  private errorListeners: Array<(message: string) => void> = [];
  private focusNeededListeners: Array<() => void> = [];

  constructor(private readonly api: ApiClient) {}

  onGraph(listener: (payload: GraphPayload) => void): void {
    this.graphListeners.push(listener);
  }

  onEgo(listener: (payload: EgoPayload) => void): void {
    this.egoListeners.push(listener);
  }

  onError(listener: (message: string) => void): void {
    this.errorListeners.push(listener);
  }

  onFocusNeeded(listener: () => void): void {
    this.focusNeededListeners.push(listener);
  }

  /** Resolves once the most recent refresh has settled. */
  idle(): Promise<void> {
    return this.settled;
  }

  setThreshold(raw: number): Promise<void> {
    this.state.threshold = clampThreshold(raw);
    return this.refresh();
  }

  setDensityCap(on: boolean): Promise<void> {
    this.state.densityCap = on;
    return this.refresh();
  }

  /** Toggle between views, keeping the threshold untouched. */
  switchMode(): Promise<void> {
    if (this.state.mode === "social") {
      if (this.state.focus === null) {
        this.focusNeededListeners.forEach((fn) => fn());
        return this.settled;
      }
      this.state.mode = "ego";
    } else {
      this.state.mode = "social";
    }
    return this.refresh();
  }

  selectFocus(id: number): Promise<void> {
    this.state.focus = id;
    this.state.mode = "ego";
    return this.refresh();
  }

  refresh(): Promise<void> {
    const token = ++this.token;
    const work = this.fetchCurrent(token);
    this.settled = work;
    return work;
  }

  private async fetchCurrent(token: number): Promise<void> {
    try {
      const graph = await this.api.graph(this.state.threshold);
      if (token !== this.token) return;
      this.graphListeners.forEach((fn) => fn(graph));
      if (this.state.mode === "ego" && this.state.focus !== null) {
        const ego = await this.api.ego(this.state.focus, this.state.threshold);
        if (token !== this.token) return;
        this.egoListeners.forEach((fn) => fn(ego));
      }
    } catch (error) {
      if (token !== this.token) return;
      const message = error instanceof Error ? error.message : String(error);
      this.errorListeners.forEach((fn) => fn(message));
    }
  }
}
