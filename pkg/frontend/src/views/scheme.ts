// Scheme editor: the two-domain / three-level keyword grid with a live
// compiled-query preview from the service, and a re-run action showing
// which papers the keyword change added or removed.

import { ApiError, type ReviewApi, type SchemeDoc } from "../api.js";
import { groupsToText, parseGroups, poolDiff } from "../state.js";
import { toast } from "../toast.js";
import { escapeHtml } from "./triage.js";

const LEVELS = [1, 2, 3] as const;
const DOMAINS = ["problem", "solution"] as const;

const LEVEL_HINTS: Record<number, string> = {
  1: "necessary (every group must match)",
  2: "expanding (any one suffices)",
  3: "scoring only (never queried)",
};

export class SchemeView {
  private scheme: SchemeDoc | null = null;
  private preview = "";
  private previewTimer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private api: ReviewApi,
    private projectId: string,
    private root: HTMLElement,
    private onMutation: () => void,
  ) {}

  async load(): Promise<void> {
    const project = await this.api.getProject(this.projectId);
    this.scheme = project.scheme;
    this.preview = project.query ?? "";
    this.render();
  }

  private collect(): SchemeDoc {
    const scheme = { ...this.scheme! };
    for (const domain of DOMAINS) {
      for (const level of LEVELS) {
        const cell = this.root.querySelector<HTMLTextAreaElement>(
          `#cell-${domain}-${level}`,
        )!;
        scheme[`${domain}_l${level}` as keyof SchemeDoc] = parseGroups(cell.value) as never;
      }
    }
    const docTypes = this.root.querySelector<HTMLInputElement>("#scheme-doctypes")!.value;
    scheme.doc_types = docTypes
      .split(",")
      .map((t) => t.trim())
      .filter(Boolean);
    const year = this.root.querySelector<HTMLInputElement>("#scheme-year")!.value;
    scheme.min_year_exclusive = year === "" ? null : Number(year);
    return scheme;
  }

  private schedulePreview(): void {
    if (this.previewTimer) clearTimeout(this.previewTimer);
    this.previewTimer = setTimeout(() => void this.refreshPreview(), 250);
  }

  async refreshPreview(): Promise<void> {
    try {
      const { query } = await this.api.previewQuery(this.collect());
      this.preview = query;
      this.root.querySelector("#query-preview")!.textContent = query;
      this.clearFindings();
    } catch (error) {
      if (error instanceof ApiError && error.status === 422) {
        this.showFindings(error);
      } else {
        toast(String(error));
      }
    }
  }

  private clearFindings(): void {
    this.root.querySelectorAll(".finding").forEach((el) => (el.textContent = ""));
  }

  private showFindings(error: ApiError): void {
    this.clearFindings();
    // findings carry a field path like "solution_l1[0].variants[1]"
    const findings = Array.isArray(error.detail)
      ? (error.detail as { path: string; message: string }[])
      : [{ path: "", message: error.message }];
    for (const finding of findings) {
      const match = /^(problem|solution)_l([123])/.exec(finding.path);
      const target = match
        ? this.root.querySelector(`#finding-${match[1]}-${match[2]}`)
        : this.root.querySelector("#finding-global");
      if (target) target.textContent = finding.message;
    }
  }

  private async submit(): Promise<void> {
    const before = (await this.api.getPapers(this.projectId)).papers.map((p) => p.eid);
    try {
      await this.api.updateScheme(this.projectId, this.collect());
      const job = await this.api.startSearch(this.projectId);
      const status = await this.api.waitForJob(job.job_id);
      if (status.status === "failed") {
        toast(`search failed: ${status.error?.message ?? "unknown"}`);
        return;
      }
      const after = (await this.api.getPapers(this.projectId)).papers.map((p) => p.eid);
      const diff = poolDiff(before, after);
      this.root.querySelector("#pool-diff")!.innerHTML = `
        <p><b>${diff.added.length}</b> added, <b>${diff.removed.length}</b> removed
           (pool ${before.length} → ${after.length})</p>
        ${diffList("added", diff.added)}
        ${diffList("removed", diff.removed)}`;
      this.onMutation();
    } catch (error) {
      if (error instanceof ApiError && error.status === 422) this.showFindings(error);
      else toast(String(error));
    }
  }

  private render(): void {
    const scheme = this.scheme!;
    const grid = DOMAINS.map(
      (domain) => `
        <div class="scheme-domain">
          <h3>${domain} domain</h3>
          ${LEVELS.map(
            (level) => `
            <label class="scheme-cell">
              <span>level ${level} <small>${LEVEL_HINTS[level]}</small></span>
              <textarea id="cell-${domain}-${level}" rows="3"
                placeholder="one group per line, synonyms joined by OR"
              >${escapeHtml(groupsToText(scheme[`${domain}_l${level}` as keyof SchemeDoc] as string[][]))}</textarea>
              <span class="finding" id="finding-${domain}-${level}"></span>
            </label>`,
          ).join("")}
        </div>`,
    ).join("");

    this.root.innerHTML = `
      <div class="scheme-grid">${grid}</div>
      <div class="scheme-extra">
        <label>document types
          <input id="scheme-doctypes" value="${escapeHtml(scheme.doc_types.join(", "))}">
        </label>
        <label>published after
          <input id="scheme-year" type="number" value="${scheme.min_year_exclusive ?? ""}">
        </label>
      </div>
      <div class="query-box">
        <h3>compiled query</h3>
        <pre id="query-preview">${escapeHtml(this.preview)}</pre>
        <span class="finding" id="finding-global"></span>
        <button id="scheme-submit">save scheme &amp; re-run search</button>
      </div>
      <div id="pool-diff"></div>`;

    this.root
      .querySelectorAll("textarea, #scheme-doctypes, #scheme-year")
      .forEach((el) => el.addEventListener("input", () => this.schedulePreview()));
    this.root
      .querySelector("#scheme-submit")!
      .addEventListener("click", () => void this.submit());
  }
}

function diffList(kind: string, eids: string[]): string {
  if (!eids.length) return "";
  const shown = eids.slice(0, 15);
  const more = eids.length > shown.length ? ` … +${eids.length - shown.length}` : "";
  return `<p class="diff-${kind}">${kind}: ${shown.map(escapeHtml).join(", ")}${more}</p>`;
}
