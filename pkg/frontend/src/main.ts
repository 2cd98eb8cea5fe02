import { ApiClient } from "./api.js";
import { DashboardApp } from "./app.js";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app mount point");
new DashboardApp(new ApiClient()).mount(root);
