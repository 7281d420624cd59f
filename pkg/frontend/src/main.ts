import { createClient } from "./api";
import { App } from "./app";

const root = document.getElementById("app");
if (root) {
  const app = new App(root, createClient(""));
  void app.start();
}
