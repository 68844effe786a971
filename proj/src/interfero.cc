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


#include "cfq/interfero.h"

#include <cmath>
#include <stdexcept>

namespace cfq::interfero {

PathNetwork::PathNetwork(std::string source, std::string detector)
    : source_(std::move(source)), detector_(std::move(detector)) {
    ensure_mode(source_);
}

Eigen::Index PathNetwork::ensure_mode(const std::string &path) {
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        if (modes_[i] == path) {
            return static_cast<Eigen::Index>(i);
        }
    }
    modes_.push_back(path);
    return static_cast<Eigen::Index>(modes_.size() - 1);
}

void PathNetwork::produced(const std::string &path) {
    ensure_mode(path);
    produced_at_[path] = elements_.size() - 1;
}

bool PathNetwork::has_mode(const std::string &path) const {
    for (const auto &m : modes_) {
        if (m == path) {
            return true;
        }
    }
    return false;
}

Eigen::Index PathNetwork::mode_index(const std::string &path) const {
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        if (modes_[i] == path) {
            return static_cast<Eigen::Index>(i);
        }
    }
    throw std::invalid_argument("unknown path '" + path + "'");
}

void PathNetwork::beam_splitter(
    const std::string &in1, const std::string &in2, const std::string &out1, const std::string &out2,
    const Eigen::Matrix2cd &b) {
    if (!is_unitary(b)) {
        throw std::invalid_argument("beam splitter matrix is not unitary");
    }
    ensure_mode(in1);
    ensure_mode(in2);
    Element e{Element::Kind::BeamSplitter, {in1, in2, out1, out2}};
    e.splitter = b;
    elements_.push_back(std::move(e));
    produced(out1);
    produced(out2);
}

void PathNetwork::phase(const std::string &path, Amplitude factor) {
    if (std::abs(std::abs(factor) - 1.0) > 1e-12) {
        throw std::invalid_argument("phase element must have unit modulus");
    }
    ensure_mode(path);
    Element e{Element::Kind::Phase, {path}};
    e.phase = factor;
    elements_.push_back(std::move(e));
}

void PathNetwork::detector(const std::string &path) {
    ensure_mode(path);
    elements_.push_back({Element::Kind::Detector, {path}});
    produced(path + "!");
}

PathNetwork PathNetwork::with_phase(const std::string &path, Amplitude factor) const {
    std::size_t at = cross_section(path);
    PathNetwork out(source_, detector_);
    auto replay = [&out](const Element &e) {
        switch (e.kind) {
            case Element::Kind::BeamSplitter:
                out.beam_splitter(e.modes[0], e.modes[1], e.modes[2], e.modes[3], e.splitter);
                break;
            case Element::Kind::Phase:
                out.phase(e.modes[0], e.phase);
                break;
            case Element::Kind::Detector:
                out.detector(e.modes[0]);
                break;
        }
    };
    for (std::size_t i = 0; i <= elements_.size(); ++i) {
        if (i == at) {
            out.phase(path, factor);
        }
        if (i < elements_.size()) {
            replay(elements_[i]);
        }
    }
    return out;
}

Eigen::MatrixXcd PathNetwork::element_matrix(std::size_t i) const {
    const Eigen::Index n = static_cast<Eigen::Index>(modes_.size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n);
    const Element &e = elements_.at(i);
    switch (e.kind) {
        case Element::Kind::BeamSplitter: {
            Eigen::Index in[2] = {mode_index(e.modes[0]), mode_index(e.modes[1])};
            Eigen::Index out[2] = {mode_index(e.modes[2]), mode_index(e.modes[3])};
            for (int r = 0; r < 2; ++r) {
                m(in[r], in[r]) = 0;
                m(out[r], out[r]) = 0;
            }
            for (int r = 0; r < 2; ++r) {
                for (int c = 0; c < 2; ++c) {
                    m(out[r], in[c]) = e.splitter(r, c);
                    m(in[r], out[c]) = std::conj(e.splitter(c, r));
                }
            }
            break;
        }
        case Element::Kind::Phase: {
            Eigen::Index k = mode_index(e.modes[0]);
            m(k, k) = e.phase;
            break;
        }
        case Element::Kind::Detector: {
            Eigen::Index a = mode_index(e.modes[0]);
            Eigen::Index b = mode_index(e.modes[0] + "!");
            m(a, a) = m(b, b) = 0;
            m(a, b) = m(b, a) = 1;
            break;
        }
    }
    return m;
}

std::size_t PathNetwork::cross_section(const std::string &path) const {
    mode_index(path);
    auto it = produced_at_.find(path);
    return it == produced_at_.end() ? 0 : it->second + 1;
}

Eigen::VectorXcd PathNetwork::forward(std::size_t cut) const {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(modes_.size()));
    v(mode_index(source_)) = 1.0;
    for (std::size_t i = 0; i < cut; ++i) {
        v = element_matrix(i) * v;
    }
    return v;
}

Eigen::VectorXcd PathNetwork::backward(std::size_t cut) const {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(modes_.size()));
    v(mode_index(detector_)) = 1.0;
    for (std::size_t i = elements_.size(); i-- > cut;) {
        v = element_matrix(i).adjoint() * v;
    }
    return v;
}

PathState PathNetwork::to_path_state(const Eigen::VectorXcd &v, double tol) const {
    PathState out;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > tol) {
            out[modes_[static_cast<std::size_t>(i)]] = v(i);
        }
    }
    return out;
}

Amplitude PathNetwork::detector_amplitude() const {
    return forward(elements_.size())(mode_index(detector_));
}

PathNetwork build_vaidman(int computer_output) {
    if (computer_output != 0 && computer_output != 1) {
        throw std::invalid_argument("computer output must be 0 or 1");
    }
    const double t = std::sqrt(2.0 / 3.0);
    const double r = std::sqrt(1.0 / 3.0);
    const double h = std::sqrt(0.5);
    Eigen::Matrix2cd outer_in;
    outer_in << r, -t, t, r;
    Eigen::Matrix2cd inner_in;
    inner_in << h, -h, h, h;
    Eigen::Matrix2cd inner_out;
    inner_out << h, h, -h, h;
    Eigen::Matrix2cd outer_out;
    outer_out << r, t, -t, r;

    PathNetwork net("In", "D");
    net.beam_splitter("In", "In2", "A", "E", outer_in);
    net.beam_splitter("E", "E2", "B", "C", inner_in);
    if (computer_output == 1) {
        net.detector("C");
    }
    net.phase("C", -1.0);
    net.beam_splitter("B", "C", "F", "G", inner_out);
    net.beam_splitter("A", "F", "D", "D2", outer_out);
    return net;
}

namespace {

PathState restrict_abc(const PathNetwork &net, const Eigen::VectorXcd &v) {
    PathState out;
    for (const char *p : {"A", "B", "C"}) {
        out[p] = v(net.mode_index(p));
    }
    return out;
}

}  // namespace

PathState pre_state(const PathNetwork &net) {
    return restrict_abc(net, net.forward(net.cross_section("B")));
}

PathState post_state(const PathNetwork &net) {
    return restrict_abc(net, net.backward(net.cross_section("B")));
}

WeakValueResult weak_value(const PathNetwork &net, const std::string &path) {
    std::size_t cut = net.cross_section(path);
    Eigen::VectorXcd pre = net.forward(cut);
    Eigen::VectorXcd post = net.backward(cut);
    WeakValueResult r;
    r.path = path;
    r.overlap = post.dot(pre);
    if (std::abs(r.overlap) < 1e-14) {
        throw std::domain_error("weak value undefined: post-selection overlap vanishes");
    }
    Eigen::Index k = net.mode_index(path);
    r.value = std::conj(post(k)) * pre(k) / r.overlap;
    return r;
}

PerturbationResponse perturb_path(const PathNetwork &net, const std::string &path, double delta) {
    if (!(std::abs(delta) <= 0.2)) {
        throw std::invalid_argument("perturbation phase must satisfy |delta| <= 0.2");
    }
    PerturbationResponse r;
    r.weak = weak_value(net, path).value;
    r.a0 = net.detector_amplitude();
    const Amplitude slab = std::polar(1.0, delta);
    r.a_delta = net.with_phase(path, slab).detector_amplitude();
    r.closed_form = r.a0 * (1.0 + (slab - 1.0) * r.weak);
    r.derivative = Amplitude(0, 1) * r.weak * r.a0;
    return r;
}

}  // namespace cfq::interfero
