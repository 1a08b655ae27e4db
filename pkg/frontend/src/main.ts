/** Browser entry point: mount the app against the local service.  Override
 * the service URL with ?service=http://host:port when it is not on the
 * default port. */

import { ServiceClient } from "./api.js";
import { App } from "./app.js";

const params = new URLSearchParams(window.location.search);
const serviceUrl = params.get("service") ?? "http://127.0.0.1:8000";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app element");

new App(root, new ServiceClient(serviceUrl));
