/** Console bootstrap: URL-backed view state wired to the live service. */

import { ApiClient } from "./api.js";
import { ChatFlow } from "./chat.js";
import { fromQuery } from "./state.js";

const root = document.getElementById("app");
if (root) {
  const state = fromQuery(location.search);
  const facilitator = new URLSearchParams(location.search).has("facilitator");
  const chat = new ChatFlow(root, new ApiClient(""), state,
                            { facilitator, updateUrl: true });
  void chat.start();
}
