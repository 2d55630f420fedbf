import { Report } from "./model";
import { initialState, renderApp } from "./ui";

declare global {
  interface Window {
    LAWLINT_REPORT?: Report;
  }
}

function boot(): void {
  const root = document.getElementById("app");
  if (!root) return;
  const report = window.LAWLINT_REPORT;
  if (!report) {
    root.textContent = "No report embedded in this page (window.LAWLINT_REPORT missing).";
    return;
  }
  renderApp(root, report, initialState(report));
}

if (document.readyState === "loading") {
  document.addEventListener("DOMContentLoaded", boot);
} else {
  boot();
}
