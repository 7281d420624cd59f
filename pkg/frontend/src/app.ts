// Application controller: wires the weight panel, ranking view and the
// dataset detail pane to the API client. Instantiable against any root
// element and client, which is how the tests drive it.

import { ApiError, type ApiClient, type Level, type Taxonomy } from "./api";
import { LatestWins, WeightPanel, nodesForLevel } from "./state";
import {
  clearBanner,
  clearChildren,
  renderObservations,
  renderProblems,
  renderRanking,
  showBanner,
} from "./render";

const PROBLEM_PAGE_SIZE = 100;

export class App {
  readonly panel = new WeightPanel();
  private readonly rankRequests = new LatestWins();
  private taxonomy: Taxonomy = { categories: [] };

  private readonly levelSelect: HTMLSelectElement;
  private readonly sliders: HTMLElement;
  private readonly applyButton: HTMLButtonElement;
  private readonly banner: HTMLElement;
  private readonly rankingTable: HTMLElement;
  private readonly detail: HTMLElement;

  constructor(
    private readonly root: HTMLElement,
    private readonly client: ApiClient,
  ) {
    this.levelSelect = root.querySelector("#level") as HTMLSelectElement;
    this.sliders = root.querySelector("#sliders") as HTMLElement;
    this.applyButton = root.querySelector("#apply") as HTMLButtonElement;
    this.banner = root.querySelector("#banner") as HTMLElement;
    this.rankingTable = root.querySelector("#ranking") as HTMLElement;
    this.detail = root.querySelector("#detail") as HTMLElement;

    this.levelSelect.addEventListener("change", () => {
      this.panel.setLevel(this.levelSelect.value as Level);
      this.renderSliders();
      this.syncApplyButton();
    });
    this.applyButton.addEventListener("click", () => {
      void this.applyWeights();
    });
  }

  async start(): Promise<void> {
    this.taxonomy = await this.client.taxonomy();
    this.renderSliders();
    this.syncApplyButton();
  }

  renderSliders(): void {
    clearChildren(this.sliders);
    for (const node of nodesForLevel(this.taxonomy, this.panel.level)) {
      const row = document.createElement("label");
      row.className = "slider-row";

      const caption = document.createElement("span");
      caption.textContent = node.label;
      row.appendChild(caption);

      const slider = document.createElement("input");
      slider.type = "range";
      slider.min = "0";
      slider.max = "1";
      slider.step = "0.05";
      slider.value = String(this.panel.weightOf(node.iri));
      slider.dataset.iri = node.iri;
      slider.addEventListener("input", () => {
        this.panel.setWeight(node.iri, Number(slider.value));
        this.syncApplyButton();
      });
      row.appendChild(slider);
      this.sliders.appendChild(row);
    }
  }

  syncApplyButton(): void {
    this.applyButton.disabled = !this.panel.hasNonZeroWeight();
  }

  async applyWeights(): Promise<void> {
    if (!this.panel.hasNonZeroWeight()) return;
    const token = this.rankRequests.begin();
    try {
      const response = await this.client.rank(this.panel.level, this.panel.weights());
      if (!this.rankRequests.isCurrent(token)) return; // stale reply dropped
      clearBanner(this.banner);
      renderRanking(this.rankingTable, response, (slug) => {
        void this.inspectDataset(slug);
      });
    } catch (error) {
      if (!this.rankRequests.isCurrent(token)) return;
      this.showError(error); // prior ranking view stays untouched
    }
  }

  async inspectDataset(slug: string, offset = 0): Promise<void> {
    try {
      const observations = await this.client.observations(slug);
      const problems = await this.client.problems(slug, offset, PROBLEM_PAGE_SIZE);
      clearBanner(this.banner);
      clearChildren(this.detail);
      const observationsPane = document.createElement("div");
      observationsPane.id = "observations";
      const problemsPane = document.createElement("div");
      problemsPane.id = "problems";
      this.detail.append(observationsPane, problemsPane);
      renderObservations(observationsPane, observations);
      renderProblems(problemsPane, {
        page: problems,
        onPage: (nextOffset) => {
          void this.inspectDataset(slug, nextOffset);
        },
      });
    } catch (error) {
      this.showError(error);
    }
  }

  private showError(error: unknown): void {
    if (error instanceof ApiError) {
      showBanner(this.banner, `${error.status} ${error.code}: ${error.message}`);
    } else {
      showBanner(this.banner, `request failed: ${String(error)}`);
    }
  }
}
