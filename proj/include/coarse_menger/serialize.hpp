#pragma once

#include <json.hpp>

#include "coarse_menger/covering.hpp"
#include "coarse_menger/generators.hpp"
#include "coarse_menger/models.hpp"
#include "coarse_menger/packing.hpp"
#include "coarse_menger/tangle.hpp"
#include "coarse_menger/transfer.hpp"
#include "coarse_menger/tree.hpp"

namespace coarse_menger {

inline constexpr const char* kLibraryVersion = "0.1.0";
inline constexpr int kReportSchema = 1;

using nlohmann::json;

// Vertex sets and paths are written with external labels; tree nodes stay as indices.
json as_json(const Graph& g, const VertexSet& s);
json as_json(const Graph& g, const PathWitness& p);
json as_json(const Graph& g, const CenteredSet& c);
json as_json(const Graph& g, const Separation& s);
json as_json(const Graph& g, const PackingSolution& s);
json as_json(const Graph& g, const CoverResult& c);
json as_json(const DualityReport& r);
json as_json(const Graph& g, const GallaiVerdict& v);
json as_json(const HellyResult& h);
json as_json(const Graph& g, const EasyTreeResult& r);
json as_json(const Graph& g, const FatMinorModel& m);
json as_json(const Graph& g, const RootedEpResult& r);
json as_json(const Graph& g, const Tangle& t);
json as_json(const Graph& g, const TrichotomyResult& r);
json as_json(const Graph& g, const MultifoldResult& r);
json as_json(const QuasiIsometryVerdict& v);
json as_json(const Graph& source, const PullbackResult& p);
json as_json(const TransferConstants& c);
json as_json(const RemoteChain& c);
json as_json(const RadiusCoefficient& c);
json as_json(const InstanceSpec& spec);

// {"map": [[source_label, target_label], ...], "m": .., "a": ..}
QuasiIsometry quasi_isometry_from_json(const Graph& source, const Graph& target, const json& doc);

// Drops every key named "seconds" or "timestamp" at any depth, for run-to-run comparison.
json canonical_report(json doc);

}  // namespace coarse_menger
