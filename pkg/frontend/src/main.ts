import { mountApp } from "./app.js";

const root = document.getElementById("app");
if (!root) {
  throw new Error("missing #app mount point");
}

// Same-origin by default; ?api=http://host:port targets a service elsewhere.
const base = new URLSearchParams(window.location.search).get("api") ?? "";
mountApp(root, base);
