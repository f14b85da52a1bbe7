import { httpApi } from "./api";
import { createApp } from "./app";
import "./style.css";

const root = document.querySelector<HTMLElement>("#app");
if (!root) throw new Error("missing #app mount point");
createApp(root, httpApi);
