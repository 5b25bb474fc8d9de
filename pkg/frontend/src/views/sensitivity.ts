// Prompt sensitivity: compare two extraction runs stored in the project.

import type { ReviewApi } from "../api.js";
import { toast } from "../toast.js";
import { escapeHtml } from "./triage.js";

export class SensitivityView {
  private prompts: string[] = [];

  constructor(
    private api: ReviewApi,
    private projectId: string,
    private root: HTMLElement,
  ) {}

  async load(): Promise<void> {
    const project = await this.api.getProject(this.projectId);
    this.prompts = project.extraction_prompts;
    this.render();
  }

  private async compare(): Promise<void> {
    const baseline = this.root.querySelector<HTMLSelectElement>("#sens-baseline")!.value;
    const variant = this.root.querySelector<HTMLSelectElement>("#sens-variant")!.value;
    try {
      const row = await this.api.getPromptSensitivity(this.projectId, baseline, variant);
      this.root.querySelector("#sens-result")!.innerHTML = `
        <table class="trend-table">
          <tr><th>missing / extra names</th><td>${row.diff_word_count}</td></tr>
          <tr><th>identical articles</th><td>${row.identical_article_count}</td></tr>
          <tr><th>enriched ratio</th><td>${row.enriched_ratio}</td></tr>
        </table>`;
    } catch (error) {
      toast(String(error));
    }
  }

  private render(): void {
    if (this.prompts.length < 2) {
      this.root.innerHTML =
        "<p>Run extraction under at least two prompts to compare them.</p>";
      return;
    }
    const options = this.prompts
      .map((p) => `<option value="${escapeHtml(p)}">${escapeHtml(p)}</option>`)
      .join("");
    this.root.innerHTML = `
      <div class="controls">
        <label>baseline <select id="sens-baseline">${options}</select></label>
        <label>variant <select id="sens-variant">${options}</select></label>
        <button id="sens-run">compare</button>
      </div>
      <div id="sens-result"></div>`;
    const variantSel = this.root.querySelector<HTMLSelectElement>("#sens-variant")!;
    if (this.prompts.length > 1) variantSel.selectedIndex = 1;
    this.root.querySelector("#sens-run")!.addEventListener("click", () => void this.compare());
  }
}
