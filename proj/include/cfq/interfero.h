// Copyright 2026 The cfq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef CFQ_INTERFERO_H
#define CFQ_INTERFERO_H

#include <map>
#include <string>
#include <vector>

#include "cfq/qstate.h"

namespace cfq::interfero {

/// Amplitude per path name. Only modes with nonzero amplitude are listed.
using PathState = std::map<std::string, Amplitude>;

struct Element {
    enum class Kind { BeamSplitter, Phase, Detector };
    Kind kind;
    /// BeamSplitter: {in1, in2, out1, out2}. Phase and Detector: {path}.
    /// A detector moves the path into the sink mode "<path>!".
    std::vector<std::string> modes;
    Eigen::Matrix2cd splitter = Eigen::Matrix2cd::Identity();  ///< (out1, out2) = splitter (in1, in2)
    Amplitude phase = 1.0;
};

/// Linear single-photon network. Each element acts unitarily on the full
/// mode space; a beam splitter B maps (in -> out) with B and (out -> in)
/// with B^dag.
class PathNetwork {
   public:
    PathNetwork(std::string source, std::string detector);

    void beam_splitter(
        const std::string &in1, const std::string &in2, const std::string &out1, const std::string &out2,
        const Eigen::Matrix2cd &b);
    void phase(const std::string &path, Amplitude factor);
    void detector(const std::string &path);
    /// Inserts a phase element right after the element producing `path`.
    PathNetwork with_phase(const std::string &path, Amplitude factor) const;

    const std::vector<std::string> &modes() const {
        return modes_;
    }
    const std::vector<Element> &elements() const {
        return elements_;
    }
    bool has_mode(const std::string &path) const;
    Eigen::Index mode_index(const std::string &path) const;

    Eigen::MatrixXcd element_matrix(std::size_t i) const;
    /// Cross-section index right after the element producing `path` (0 for
    /// the source). Throws std::invalid_argument on an unknown path.
    std::size_t cross_section(const std::string &path) const;

    /// Source photon evolved through the first `cut` elements.
    Eigen::VectorXcd forward(std::size_t cut) const;
    /// Detector functional pulled back to cross-section `cut`, as a ket.
    Eigen::VectorXcd backward(std::size_t cut) const;

    PathState to_path_state(const Eigen::VectorXcd &v, double tol = 1e-15) const;

    Amplitude detector_amplitude() const;
    double detection_probability() const {
        return std::norm(detector_amplitude());
    }

   private:
    Eigen::Index ensure_mode(const std::string &path);
    void produced(const std::string &path);

    std::string source_;
    std::string detector_;
    std::vector<std::string> modes_;
    std::vector<Element> elements_;
    std::map<std::string, std::size_t> produced_at_;
};

/// Nested interferometer: outer splitters transmit 2/3 and reflect 1/3,
/// inner ones are balanced, a pi phase sits on C. Output 0 leaves the inner
/// arms open; output 1 absorbs C.
PathNetwork build_vaidman(int computer_output);

/// State on (A, B, C) just inside the inner interferometer.
PathState pre_state(const PathNetwork &net);
/// Detector functional on (A, B, C) at the same cross-section.
PathState post_state(const PathNetwork &net);

struct WeakValueResult {
    Amplitude value;
    Amplitude overlap;
    std::string path;
};

/// <post|P_path|pre>/<post|pre> at the path's cross-section. Throws
/// std::domain_error on a vanishing overlap.
WeakValueResult weak_value(const PathNetwork &net, const std::string &path);

struct PerturbationResponse {
    Amplitude a0;           ///< detector amplitude without the slab
    Amplitude a_delta;      ///< with phase e^{i delta} on the path
    Amplitude closed_form;  ///< a0 (1 + (e^{i delta} - 1) w)
    Amplitude derivative;   ///< i w a0
    Amplitude weak;
};

/// Throws std::invalid_argument on an unknown path or |delta| > 0.2.
PerturbationResponse perturb_path(const PathNetwork &net, const std::string &path, double delta);

}  // namespace cfq::interfero

#endif
