#include "gabriel/verdict.hpp"

namespace gabriel {

std::string to_string(Status s) {
  switch (s) {
    case Status::Verified: return "Verified";
    case Status::Failed: return "Failed";
    case Status::Unchecked: return "Unchecked";
  }
  return "?";
}

std::string Check::to_string() const {
  std::string out = gabriel::to_string(status);
  if (!bound.empty()) out += " (" + bound + ")";
  for (std::size_t i = 0; i < witness.size(); ++i) out += (i ? "; " : ": ") + witness[i];
  return out;
}

}  // namespace gabriel
