// Entry point: project picker, view tabs, stale-view detection via the
// project revision counter.

import { ReviewApi } from "./api.js";
import { newSession, type UiSession, type ViewName } from "./state.js";
import { toast } from "./toast.js";
import { ClustersView } from "./views/clusters.js";
import { SchemeView } from "./views/scheme.js";
import { SensitivityView } from "./views/sensitivity.js";
import { TrendsView } from "./views/trends.js";
import { TriageView } from "./views/triage.js";

const TABS: { view: ViewName; label: string }[] = [
  { view: "scheme", label: "Scheme" },
  { view: "triage", label: "Papers" },
  { view: "clusters", label: "Clusters" },
  { view: "trends", label: "Trends" },
  { view: "sensitivity", label: "Sensitivity" },
];

class App {
  private api = new ReviewApi("");
  private session: UiSession | null = null;
  private content = document.getElementById("content")!;
  private staleTimer: ReturnType<typeof setInterval> | null = null;

  async start(): Promise<void> {
    const { projects } = await this.api.listProjects();
    if (!projects.length) {
      this.content.innerHTML =
        "<p>No projects on the service yet. Create one with the CLI (init + search) and reload.</p>";
      return;
    }
    this.renderProjectPicker(projects);
    await this.openProject(projects[0]);
  }

  private renderProjectPicker(projects: string[]): void {
    const picker = document.getElementById("project-picker")!;
    picker.innerHTML = projects
      .map((id) => `<option value="${id}">${id}</option>`)
      .join("");
    picker.addEventListener("change", (e) => {
      void this.openProject((e.target as HTMLSelectElement).value);
    });
  }

  private async openProject(projectId: string): Promise<void> {
    this.session = newSession(projectId);
    const project = await this.api.getProject(projectId);
    this.session.revision = project.revision;
    this.renderTabs();
    await this.show("triage");
    if (this.staleTimer) clearInterval(this.staleTimer);
    this.staleTimer = setInterval(() => void this.checkRevision(), 4000);
  }

  private async checkRevision(): Promise<void> {
    if (!this.session) return;
    try {
      const { revision } = await this.api.getRevision(this.session.projectId);
      const badge = document.getElementById("stale-badge")!;
      if (revision !== this.session.revision) {
        badge.textContent = "project changed elsewhere — switch tabs to refresh";
        badge.classList.add("visible");
      } else {
        badge.textContent = "";
        badge.classList.remove("visible");
      }
    } catch {
      // service briefly unavailable; the next poll retries
    }
  }

  private renderTabs(): void {
    const bar = document.getElementById("tabs")!;
    bar.innerHTML = TABS.map(
      (tab) => `<button data-view="${tab.view}">${tab.label}</button>`,
    ).join("");
    bar.querySelectorAll<HTMLButtonElement>("button").forEach((button) =>
      button.addEventListener("click", () => void this.show(button.dataset.view as ViewName)),
    );
  }

  private markMutation = (): void => {
    if (!this.session) return;
    void this.api
      .getRevision(this.session.projectId)
      .then(({ revision }) => (this.session!.revision = revision));
  };

  private async show(view: ViewName): Promise<void> {
    if (!this.session) return;
    this.session.view = view;
    document
      .querySelectorAll("#tabs button")
      .forEach((b) => b.classList.toggle("active", (b as HTMLElement).dataset.view === view));
    this.content.innerHTML = "<p class='muted'>loading…</p>";
    const { projectId } = this.session;
    try {
      if (view === "triage") {
        await new TriageView(this.api, projectId, this.content, this.markMutation).load();
      } else if (view === "scheme") {
        await new SchemeView(this.api, projectId, this.content, this.markMutation).load();
      } else if (view === "clusters") {
        await new ClustersView(this.api, projectId, this.content, this.markMutation).load();
      } else if (view === "trends") {
        await new TrendsView(this.api, projectId, this.content).load();
      } else {
        await new SensitivityView(this.api, projectId, this.content).load();
      }
      this.markMutation();
    } catch (error) {
      this.content.innerHTML = `<p class="error">${String(error)}</p>`;
      toast(String(error));
    }
  }
}

void new App().start();
