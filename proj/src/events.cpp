#include "tiedecay/events.hpp"

#include "tiedecay/errors.hpp"

namespace tiedecay {

void EventLog::validate() const {
  double prev = 0.0;
  for (const auto& e : events) {
    if (!(e.t >= prev) || e.t > horizon) {
      throw StructuralError("event times must be nondecreasing within [0, horizon]");
    }
    if (e.i == e.j || e.i < 0 || e.j < 0 || e.i >= node_count || e.j >= node_count) {
      throw StructuralError("event endpoints must be distinct nodes in range");
    }
    prev = e.t;
  }
}

}  // namespace tiedecay
