import { ApiClient } from "./api";
import { colorByNodeId } from "./color";
import { renderEgo } from "./egoview";
import { renderPanel } from "./panel";
import { renderSocial } from "./social";
import { Store, THRESHOLD_MAX, THRESHOLD_MIN, throttled } from "./state";
import type { CategoryDto, EgoPayload, GraphPayload } from "./types";

const SLIDER_THROTTLE_MS = 150;

export class App {
  readonly store: Store;
  readonly api: ApiClient;

  private categories: CategoryDto[] = [];
  private colors: Map<number, string> = new Map();
  private names: Map<number, string> = new Map();
  private filterText = "";

  private slider!: HTMLInputElement;
  private sliderValue!: HTMLElement;
  private switchButton!: HTMLButtonElement;
  private capToggle!: HTMLInputElement;
  private banner!: HTMLElement;
  private statsLine!: HTMLElement;
  private modeLabel!: HTMLElement;
  private filterBox!: HTMLInputElement;
  private panelList!: HTMLElement;
  private canvas!: SVGSVGElement;

  constructor(
    private readonly root: HTMLElement,
    baseUrl = "",
  ) {
    this.api = new ApiClient(baseUrl);
    this.store = new Store(this.api);
    this.buildSkeleton();
    this.wireStore();
    this.wireControls();
  }

  /** Load categories and stats, then render the initial view. */
  async init(): Promise<void> {
    try {
      const [categories, stats] = await Promise.all([
        this.api.categories(),
        this.api.stats(),
      ]);
      this.categories = categories;
      this.names = new Map(categories.map((c) => [c.id, c.name]));
      this.statsLine.textContent =
        `${stats.nodes} objects · ${stats.edges} links · ` +
        `avg degree ${stats.average_degree.toFixed(2)}`;
    } catch (error) {
      this.showError(error instanceof Error ? error.message : String(error));
    }
    this.renderPanelNow();
    await this.store.refresh();
  }

  idle(): Promise<void> {
    return this.store.idle();
  }

  private buildSkeleton(): void {
    this.root.innerHTML = `
      <header class="topbar">
        <h1>constellation</h1>
        <span class="stats" data-role="stats"></span>
        <span class="mode-label" data-role="mode"></span>
        <div class="controls">
          <label class="slider-label">
            threshold
            <input type="range" data-role="slider"
                   min="${THRESHOLD_MIN}" max="${THRESHOLD_MAX}" step="0.005">
            <output data-role="slider-value"></output>
          </label>
          <button type="button" data-role="switch">switch view</button>
          <label class="cap-label">
            <input type="checkbox" data-role="cap"> cap drawn edges
          </label>
        </div>
      </header>
      <div class="banner hidden" data-role="banner"></div>
      <div class="content">
        <aside class="panel">
          <input type="search" placeholder="filter objects"
                 data-role="filter" class="filter-box">
          <div class="panel-list" data-role="panel-list"></div>
        </aside>
        <main class="canvas-holder">
          <svg data-role="canvas" class="canvas"></svg>
        </main>
      </div>
    `;
    const pick = <T extends Element>(role: string): T => {
      const found = this.root.querySelector(`[data-role="${role}"]`);
      if (!found) throw new Error(`missing element: ${role}`);
      return found as T;
    };
    this.slider = pick<HTMLInputElement>("slider");
    this.sliderValue = pick<HTMLElement>("slider-value");
    this.switchButton = pick<HTMLButtonElement>("switch");
    this.capToggle = pick<HTMLInputElement>("cap");
    this.banner = pick<HTMLElement>("banner");
    this.statsLine = pick<HTMLElement>("stats");
    this.modeLabel = pick<HTMLElement>("mode");
    this.filterBox = pick<HTMLInputElement>("filter");
    this.panelList = pick<HTMLElement>("panel-list");
    this.canvas = pick<SVGSVGElement>("canvas");
    this.slider.value = String(this.store.state.threshold);
    this.capToggle.checked = this.store.state.densityCap;
    this.syncLabels();
  }

  private wireStore(): void {
    this.store.onGraph((payload) => this.handleGraph(payload));
    this.store.onEgo((payload) => this.handleEgo(payload));
    this.store.onError((message) => this.showError(message));
    this.store.onFocusNeeded(() =>
      this.showError("pick an object from the panel to open the ego view"),
    );
  }

  private wireControls(): void {
    const throttledThreshold = throttled(SLIDER_THROTTLE_MS, (value: number) => {
      void this.store.setThreshold(value);
    });
    this.slider.addEventListener("input", () => {
      this.sliderValue.textContent = this.slider.value;
      throttledThreshold(Number(this.slider.value));
    });
    // drag-end lands immediately, bypassing the throttle window
    this.slider.addEventListener("change", () => {
      void this.store.setThreshold(Number(this.slider.value));
    });
    this.switchButton.addEventListener("click", () => {
      void this.store.switchMode();
    });
    this.capToggle.addEventListener("change", () => {
      void this.store.setDensityCap(this.capToggle.checked);
    });
    this.filterBox.addEventListener("input", () => {
      this.filterText = this.filterBox.value;
      this.renderPanelNow();
    });
  }

  private handleGraph(payload: GraphPayload): void {
    this.colors = colorByNodeId(
      payload.nodes.map((n) => n.id),
      payload.communities.membership,
    );
    this.clearError();
    this.renderPanelNow();
    if (this.store.state.mode === "social") {
      renderSocial(this.canvas, payload, {
        densityCap: this.store.state.densityCap,
        onNodeClick: (id) => void this.store.selectFocus(id),
      });
    }
    this.syncLabels();
  }

  private handleEgo(payload: EgoPayload): void {
    this.clearError();
    renderEgo(this.canvas, payload, {
      colors: this.colors,
      names: this.names,
      onNodeClick: (id) => void this.store.selectFocus(id),
    });
    this.syncLabels();
  }

  private renderPanelNow(): void {
    renderPanel(this.panelList, this.categories, {
      colors: this.colors,
      filter: this.filterText,
      selected: this.store.state.focus,
      onSelect: (id) => void this.store.selectFocus(id),
    });
  }

  private syncLabels(): void {
    this.sliderValue.textContent = String(this.store.state.threshold);
    this.slider.value = String(this.store.state.threshold);
    const focusName =
      this.store.state.focus !== null
        ? this.names.get(this.store.state.focus) ?? String(this.store.state.focus)
        : "";
    this.modeLabel.textContent =
      this.store.state.mode === "social"
        ? "social-centric view"
        : `ego-centric view · ${focusName}`;
  }

  private showError(message: string): void {
    this.banner.textContent = message;
    this.banner.classList.remove("hidden");
  }

  private clearError(): void {
    this.banner.textContent = "";
    this.banner.classList.add("hidden");
  }
}

const mount = typeof document !== "undefined" ? document.getElementById("app") : null;
if (mount) {
  const app = new App(mount);
  void app.init();
}
