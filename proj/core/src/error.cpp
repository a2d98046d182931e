#include "hypermetric/error.hpp"

namespace hypermetric {

namespace {

std::string render_tag(Errc code, const std::vector<std::size_t>& indices) {
  std::string out(to_string(code));
  if (!indices.empty()) {
    out += '(';
    for (std::size_t k = 0; k < indices.size(); ++k) {
      if (k != 0) out += ',';
      out += std::to_string(indices[k]);
    }
    out += ')';
  }
  return out;
}

std::string render(Errc code, const std::vector<std::size_t>& indices, std::string_view detail) {
  std::string out = render_tag(code, indices);
  if (!detail.empty()) {
    out += ": ";
    out += detail;
  }
  return out;
}

}  // namespace

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NotSquare: return "NotSquare";
    case Errc::Asymmetric: return "Asymmetric";
    case Errc::NegativeEntry: return "NegativeEntry";
    case Errc::NonzeroDiagonal: return "NonzeroDiagonal";
    case Errc::TriangleViolation: return "TriangleViolation";
    case Errc::DuplicatePoints: return "DuplicatePoints";
    case Errc::DisconnectedGraph: return "DisconnectedGraph";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::EmptyWitnessSet: return "EmptyWitnessSet";
    case Errc::DegenerateTriple: return "DegenerateTriple";
    case Errc::NoValidTriple: return "NoValidTriple";
    case Errc::NoQualifyingFamily: return "NoQualifyingFamily";
    case Errc::NonpositiveRadius: return "NonpositiveRadius";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::NotAdmissible: return "NotAdmissible";
    case Errc::NotPairwiseAdmissible: return "NotPairwiseAdmissible";
    case Errc::NonConvergence: return "NonConvergence";
    case Errc::SizeCapExceeded: return "SizeCapExceeded";
    case Errc::NotDownwardClosed: return "NotDownwardClosed";
    case Errc::InvalidFiltration: return "InvalidFiltration";
    case Errc::IoError: return "IoError";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(Errc code, std::vector<std::size_t> indices, std::string_view detail)
    : std::runtime_error(render(code, indices, detail)), code_(code), indices_(std::move(indices)) {}

Error::Error(Errc code, std::string_view detail) : Error(code, std::vector<std::size_t>{}, detail) {}

std::string Error::tag() const { return render_tag(code_, indices_); }

}  // namespace hypermetric
