// Loads the toggle switch, lists its stable states and checks a property.
#include <iostream>

#include "grn/grn.hpp"

int main() {
  const char* text =
      "network Toggle\n"
      "gene a levels 0..1\n"
      "gene b levels 0..1\n"
      "a -| b threshold 1\n"
      "b -| a threshold 1\n"
      "rule a: when b >= 1 -> 0 default 1\n"
      "rule b: when a >= 1 -> 0 default 1\n"
      "init a = 0, b = 0\n";

  auto loaded = grn::dsl::load_network(text);
  if (!loaded) {
    for (const auto& d : loaded.diagnostics) std::cerr << grn::format(d, "toggle") << '\n';
    return 1;
  }
  const grn::Network& net = *loaded.value;
  grn::SymbolicModel model(net);

  const auto stable = grn::stable_states(model, std::nullopt);
  std::cout << stable.count << " stable states\n";
  for (const auto& s : stable.states) std::cout << "  " << grn::describe_state(net, s) << '\n';

  auto query = grn::dsl::load_formula("EF (a = 1 and b = 0)", net);
  const auto verdict = grn::check(model, *query.value);
  std::cout << "EF (a = 1 and b = 0): " << (verdict.holds ? "holds" : "fails") << '\n';
  if (verdict.evidence) {
    for (const auto& s : *verdict.evidence) std::cout << "  " << grn::describe_state(net, s) << '\n';
  }
  std::cout << "reachable: " << grn::count_reachable(model) << '\n';
}
