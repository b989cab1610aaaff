import { ApiClient } from "./api.js";
import { App } from "./app.js";

const params = new URLSearchParams(location.search);
const baseUrl = params.get("service") ?? "http://127.0.0.1:8080";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app mount point");

void new App(new ApiClient(baseUrl), root).start();
