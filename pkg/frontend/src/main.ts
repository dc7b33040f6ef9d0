import { Api } from "./api.js";
import { App } from "./app.js";

const baseUrl = new URLSearchParams(window.location.search).get("service") ?? "";
const root = document.getElementById("app");
if (!root) throw new Error("missing #app mount point");
void new App(new Api(baseUrl), root).start();
