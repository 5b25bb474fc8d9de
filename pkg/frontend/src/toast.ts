// Error/info toasts surfaced for failed service calls.

let container: HTMLElement | null = null;

export function toast(message: string, kind: "error" | "info" = "error"): void {
  if (!container) {
    container = document.createElement("div");
    container.className = "toasts";
    document.body.appendChild(container);
  }
  const item = document.createElement("div");
  item.className = `toast toast-${kind}`;
  item.textContent = message;
  container.appendChild(item);
  setTimeout(() => item.remove(), 5000);
}
