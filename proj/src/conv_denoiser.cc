// Copyright 2026 The StructMIA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "structmia/conv_denoiser.h"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <numeric>

#include "structmia/error.h"
#include "structmia/kernels.h"
#include "structmia/rng.h"

namespace structmia {
namespace {

constexpr int kConvs = 8;   // e0 d1 d2 d3 u3 u2 u1 out
constexpr int kStages = 7;  // every conv but the output one
constexpr int kFreqs = 4;
constexpr int kFeatures = 2 * kFreqs;
constexpr double kTimeScale = 1000.0;
constexpr float kSlope = 0.1f;

constexpr char kMagic[8] = {'S', 'M', 'I', 'A', 'C', 'O', 'N', 'V'};
constexpr std::uint32_t kFormatVersion = 1;

struct ConvSpec {
  int in;
  int out;
  int stride;
};

std::array<ConvSpec, kConvs> ConvSpecs(const ConvNetArch& a) {
  return {{{a.channels, a.c1, 1},
           {a.c1, a.c2, 2},
           {a.c2, a.c3, 2},
           {a.c3, a.c3, 2},
           {a.c3, a.c3, 1},
           {a.c3, a.c2, 1},
           {a.c2, a.c1, 1},
           {a.c1, a.channels, 1}}};
}

// Sinusoidal features of t / 1000 at frequencies pi * 2^f.
std::array<float, kFeatures> TimeFeatures(int t) {
  std::array<float, kFeatures> phi;
  for (int f = 0; f < kFreqs; ++f) {
    const double angle = t / kTimeScale * std::ldexp(1.0, f) * std::numbers::pi;
    phi[f] = static_cast<float>(std::sin(angle));
    phi[kFreqs + f] = static_cast<float>(std::cos(angle));
  }
  return phi;
}

float LeakyRelu(float v) { return v > 0.0f ? v : kSlope * v; }
float LeakyReluSlope(float pre) { return pre > 0.0f ? 1.0f : kSlope; }

// Planar (C x H x W) tensor of one sample.
struct Tensor {
  int c = 0, h = 0, w = 0;
  std::vector<float> v;

  Tensor() = default;
  Tensor(int c_, int h_, int w_) : c(c_), h(h_), w(w_), v(std::size_t(c_) * h_ * w_, 0.0f) {}
  std::size_t plane() const { return std::size_t(h) * w; }
  float* channel(int ch) { return v.data() + ch * plane(); }
  const float* channel(int ch) const { return v.data() + ch * plane(); }
};

Tensor Upsample2(const Tensor& in) {
  Tensor out(in.c, in.h * 2, in.w * 2);
  for (int ch = 0; ch < in.c; ++ch) {
    const float* src = in.channel(ch);
    float* dst = out.channel(ch);
    for (int y = 0; y < out.h; ++y) {
      for (int x = 0; x < out.w; ++x) {
        dst[y * out.w + x] = src[(y / 2) * in.w + x / 2];
      }
    }
  }
  return out;
}

// Adjoint of Upsample2: sums each 2 x 2 block.
Tensor Upsample2Adjoint(const Tensor& grad) {
  Tensor out(grad.c, grad.h / 2, grad.w / 2);
  for (int ch = 0; ch < grad.c; ++ch) {
    const float* src = grad.channel(ch);
    float* dst = out.channel(ch);
    for (int y = 0; y < grad.h; ++y) {
      for (int x = 0; x < grad.w; ++x) {
        dst[(y / 2) * out.w + x / 2] += src[y * grad.w + x];
      }
    }
  }
  return out;
}

// 3x3 patches with zero padding 1: rows (ci, ky, kx), columns output pixels.
std::vector<float> Im2Col(const Tensor& in, int stride, int oh, int ow) {
  const std::size_t n = std::size_t(oh) * ow;
  std::vector<float> col(std::size_t(in.c) * 9 * n, 0.0f);
  for (int ci = 0; ci < in.c; ++ci) {
    const float* src = in.channel(ci);
    for (int ky = 0; ky < 3; ++ky) {
      for (int kx = 0; kx < 3; ++kx) {
        float* row = &col[(std::size_t(ci) * 9 + ky * 3 + kx) * n];
        for (int oy = 0; oy < oh; ++oy) {
          const int iy = oy * stride + ky - 1;
          if (iy < 0 || iy >= in.h) continue;
          for (int ox = 0; ox < ow; ++ox) {
            const int ix = ox * stride + kx - 1;
            if (ix >= 0 && ix < in.w) row[oy * ow + ox] = src[iy * in.w + ix];
          }
        }
      }
    }
  }
  return col;
}

Tensor Col2Im(const std::vector<float>& col, int c, int h, int w, int stride,
              int oh, int ow) {
  Tensor out(c, h, w);
  const std::size_t n = std::size_t(oh) * ow;
  for (int ci = 0; ci < c; ++ci) {
    float* dst = out.channel(ci);
    for (int ky = 0; ky < 3; ++ky) {
      for (int kx = 0; kx < 3; ++kx) {
        const float* row = &col[(std::size_t(ci) * 9 + ky * 3 + kx) * n];
        for (int oy = 0; oy < oh; ++oy) {
          const int iy = oy * stride + ky - 1;
          if (iy < 0 || iy >= h) continue;
          for (int ox = 0; ox < ow; ++ox) {
            const int ix = ox * stride + kx - 1;
            if (ix >= 0 && ix < w) dst[iy * w + ix] += row[oy * ow + ox];
          }
        }
      }
    }
  }
  return out;
}

void WriteU32(std::ostream& os, std::uint32_t v) {
  const unsigned char b[4] = {static_cast<unsigned char>(v),
                              static_cast<unsigned char>(v >> 8),
                              static_cast<unsigned char>(v >> 16),
                              static_cast<unsigned char>(v >> 24)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

void WriteU64(std::ostream& os, std::uint64_t v) {
  WriteU32(os, static_cast<std::uint32_t>(v));
  WriteU32(os, static_cast<std::uint32_t>(v >> 32));
}

std::uint32_t ReadU32(std::istream& is, const std::string& path) {
  unsigned char b[4];
  if (!is.read(reinterpret_cast<char*>(b), 4)) {
    throw FormatError(path + ": truncated model header");
  }
  return std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 |
         std::uint32_t(b[2]) << 16 | std::uint32_t(b[3]) << 24;
}

}  // namespace

// Offsets of every tensor inside the flat parameter vector, in file order:
// for each conv its weights [out][in][3][3] then bias [out]; then for each
// stage the time map [channels][8]; then for each stage the class table
// [num_classes + 1][channels].
struct ConvDenoiser::Layout {
  std::array<ConvSpec, kConvs> conv;
  std::array<std::size_t, kConvs> weight, bias;
  std::array<std::size_t, kStages> time, klass;
  std::size_t total = 0;

  explicit Layout(const ConvNetArch& a) : conv(ConvSpecs(a)) {
    for (int i = 0; i < kConvs; ++i) {
      weight[i] = total;
      total += std::size_t(conv[i].out) * conv[i].in * 9;
      bias[i] = total;
      total += conv[i].out;
    }
    for (int s = 0; s < kStages; ++s) {
      time[s] = total;
      total += std::size_t(conv[s].out) * kFeatures;
    }
    for (int s = 0; s < kStages; ++s) {
      klass[s] = total;
      total += std::size_t(a.num_classes + 1) * conv[s].out;
    }
  }
};

// Everything Backward needs from one forward pass.
struct ConvDenoiser::Cache {
  int token = 0;
  std::array<float, kFeatures> phi{};
  std::array<std::vector<float>, kConvs> col;  // im2col of each conv input
  std::array<Tensor, kConvs> input;            // shape of each conv input
  std::array<Tensor, kStages> pre;             // pre-activations
};

std::size_t ParameterCount(const ConvNetArch& arch) {
  arch.Validate();
  std::size_t total = 0;
  for (const ConvSpec& c : ConvSpecs(arch)) {
    total += std::size_t(c.out) * c.in * 9 + c.out;
  }
  for (int s = 0; s < kStages; ++s) {
    total += std::size_t(ConvSpecs(arch)[s].out) * (kFeatures + arch.num_classes + 1);
  }
  return total;
}

void ConvNetArch::Validate() const {
  if (height < 8 || width < 8 || height % 8 != 0 || width % 8 != 0) {
    throw ParameterError("network sides must be positive multiples of 8, got " +
                         std::to_string(height) + "x" + std::to_string(width));
  }
  if (channels != 1 && channels != 3) {
    throw ParameterError("network channels must be 1 or 3");
  }
  if (c1 < 1 || c2 < 1 || c3 < 1) {
    throw ParameterError("network widths must be positive");
  }
  if (num_classes < 0) throw ParameterError("num_classes must be >= 0");
}

void TrainConfig::Validate(const Schedule& schedule) const {
  if (epochs < 1) throw ParameterError("training needs epochs >= 1");
  if (!(lr > 0.0) || !std::isfinite(lr)) {
    throw ParameterError("learning rate must be positive");
  }
  if (!(momentum >= 0.0 && momentum < 1.0)) {
    throw ParameterError("momentum must be in [0, 1)");
  }
  if (batch < 1) throw ParameterError("batch must be >= 1");
  if (t_max_train < 1 || t_max_train > schedule.t_max()) {
    throw ParameterError("t_max_train must be in [1, " +
                         std::to_string(schedule.t_max()) + "]");
  }
  if (!(label_dropout >= 0.0 && label_dropout <= 1.0)) {
    throw ParameterError("label_dropout must be in [0, 1]");
  }
}

ConvDenoiser::ConvDenoiser(const ConvNetArch& arch, std::uint64_t init_seed)
    : arch_(arch) {
  arch_.Validate();
  const Layout L(arch_);
  params_.assign(L.total, 0.0f);
  Stream rng(init_seed, 0, StreamTag::kTrainingInit);
  for (int i = 0; i < kConvs; ++i) {
    const double bound = 1.0 / std::sqrt(9.0 * L.conv[i].in);
    const std::size_t end = L.bias[i] + L.conv[i].out;
    for (std::size_t p = L.weight[i]; p < end; ++p) {
      params_[p] = static_cast<float>(rng.Uniform(-bound, bound));
    }
  }
  const double bound = 1.0 / std::sqrt(double(kFeatures));
  for (int s = 0; s < kStages; ++s) {
    const std::size_t end = L.time[s] + std::size_t(L.conv[s].out) * kFeatures;
    for (std::size_t p = L.time[s]; p < end; ++p) {
      params_[p] = static_cast<float>(rng.Uniform(-bound, bound));
    }
  }
}

std::vector<float> ConvDenoiser::Forward(const std::vector<float>& input,
                                         int t, int token, Cache& cache) const {
  const Layout L(arch_);
  const auto& k = kernels::Active();
  const float* p = params_.data();
  cache.token = token;
  cache.phi = TimeFeatures(t);

  // Convolution i applied to x; for stages, adds the time and class biases.
  auto conv = [&](int i, Tensor x) {
    const ConvSpec& c = L.conv[i];
    const int oh = x.h / c.stride;
    const int ow = x.w / c.stride;
    cache.col[i] = Im2Col(x, c.stride, oh, ow);
    Tensor out(c.out, oh, ow);
    for (int o = 0; o < c.out; ++o) {
      float bias = p[L.bias[i] + o];
      if (i < kStages) {
        bias += k.dot_f(p + L.time[i] + std::size_t(o) * kFeatures,
                        cache.phi.data(), kFeatures);
        bias += p[L.klass[i] + std::size_t(token) * c.out + o];
      }
      std::fill_n(out.channel(o), out.plane(), bias);
    }
    k.gemm_f(c.out, out.plane(), std::size_t(c.in) * 9, p + L.weight[i],
             std::size_t(c.in) * 9, cache.col[i].data(), out.plane(),
             out.v.data(), out.plane());
    cache.input[i].c = x.c;  // only the input shape is needed later
    cache.input[i].h = x.h;
    cache.input[i].w = x.w;
    return out;
  };
  auto activate = [&](int i, Tensor pre) {
    cache.pre[i] = pre;
    for (float& v : pre.v) v = LeakyRelu(v);
    return pre;
  };
  auto add = [](Tensor a, const Tensor& b) {
    for (std::size_t j = 0; j < a.v.size(); ++j) a.v[j] += b.v[j];
    return a;
  };

  Tensor x(arch_.channels, arch_.height, arch_.width);
  x.v = input;
  const Tensor a = activate(0, conv(0, x));
  const Tensor b = activate(1, conv(1, a));
  const Tensor c = activate(2, conv(2, b));
  const Tensor d = activate(3, conv(3, c));
  const Tensor u3 = add(activate(4, conv(4, Upsample2(d))), c);
  const Tensor u2 = add(activate(5, conv(5, Upsample2(u3))), b);
  const Tensor u1 = add(activate(6, conv(6, Upsample2(u2))), a);
  return conv(7, u1).v;
}

void ConvDenoiser::Backward(const Cache& cache, std::vector<float> grad_out,
                            std::vector<float>& grad) const {
  const Layout L(arch_);
  const auto& k = kernels::Active();
  const float* p = params_.data();

  // Gradient through conv i given the gradient of its output (after the
  // stage bias); returns the gradient of its input unless i == 0.
  auto conv_back = [&](int i, const Tensor& g) {
    const ConvSpec& c = L.conv[i];
    const std::size_t n = g.plane();
    const std::size_t kk = std::size_t(c.in) * 9;
    const std::vector<float>& col = cache.col[i];
    for (int o = 0; o < c.out; ++o) {
      const float* go = g.channel(o);
      const float gsum = std::accumulate(go, go + n, 0.0f);
      grad[L.bias[i] + o] += gsum;
      if (i < kStages) {
        k.axpy_f(gsum, cache.phi.data(),
                 &grad[L.time[i] + std::size_t(o) * kFeatures], kFeatures);
        grad[L.klass[i] + std::size_t(cache.token) * c.out + o] += gsum;
      }
      float* gw = &grad[L.weight[i] + o * kk];
      for (std::size_t r = 0; r < kk; ++r) gw[r] += k.dot_f(go, &col[r * n], n);
    }
    const Tensor& in = cache.input[i];
    if (i == 0) return Tensor();
    // dcol = W^T g
    std::vector<float> wt(kk * c.out);
    for (int o = 0; o < c.out; ++o) {
      for (std::size_t r = 0; r < kk; ++r) {
        wt[r * c.out + o] = p[L.weight[i] + o * kk + r];
      }
    }
    std::vector<float> dcol(kk * n, 0.0f);
    k.gemm_f(kk, n, c.out, wt.data(), c.out, g.v.data(), n, dcol.data(), n);
    return Col2Im(dcol, in.c, in.h, in.w, c.stride, g.h, g.w);
  };
  auto act_back = [&](int i, Tensor g) {
    const Tensor& pre = cache.pre[i];
    for (std::size_t j = 0; j < g.v.size(); ++j) g.v[j] *= LeakyReluSlope(pre.v[j]);
    return g;
  };
  auto add = [](Tensor a, const Tensor& b) {
    for (std::size_t j = 0; j < a.v.size(); ++j) a.v[j] += b.v[j];
    return a;
  };

  Tensor g_out(arch_.channels, arch_.height, arch_.width);
  g_out.v = std::move(grad_out);
  const Tensor g_u1 = conv_back(7, g_out);
  const Tensor g_u2 = Upsample2Adjoint(conv_back(6, act_back(6, g_u1)));
  const Tensor g_u3 = Upsample2Adjoint(conv_back(5, act_back(5, g_u2)));
  const Tensor g_d = Upsample2Adjoint(conv_back(4, act_back(4, g_u3)));
  const Tensor g_c = add(conv_back(3, act_back(3, g_d)), g_u3);
  const Tensor g_b = add(conv_back(2, act_back(2, g_c)), g_u2);
  const Tensor g_a = add(conv_back(1, act_back(1, g_b)), g_u1);
  conv_back(0, act_back(0, g_a));
}

int ConvDenoiser::TokenFor(const Condition& cond) const {
  if (!cond.is_class()) return null_token();
  if (cond.label() >= arch_.num_classes) {
    throw ParameterError("network cannot condition on " + cond.ToString() +
                         " (it knows " + std::to_string(arch_.num_classes) +
                         " classes)");
  }
  return cond.label();
}

namespace {

std::vector<float> ToPlanar(const Raster& r) {
  const Shape s = r.shape();
  const std::size_t plane = std::size_t(s.height) * s.width;
  std::vector<float> out(r.size());
  for (std::size_t i = 0; i < plane; ++i) {
    for (int c = 0; c < s.channels; ++c) {
      out[c * plane + i] = static_cast<float>(r.data()[i * s.channels + c]);
    }
  }
  return out;
}

Raster FromPlanar(const std::vector<float>& v, const Shape& s) {
  const std::size_t plane = std::size_t(s.height) * s.width;
  Raster out(s);
  for (std::size_t i = 0; i < plane; ++i) {
    for (int c = 0; c < s.channels; ++c) {
      out.data()[i * s.channels + c] = v[c * plane + i];
    }
  }
  return out;
}

}  // namespace

Raster ConvDenoiser::Predict(const Raster& x_t, int t,
                             const Condition& cond) const {
  const Shape expected{arch_.height, arch_.width, arch_.channels};
  if (x_t.shape() != expected) {
    throw ParameterError("network query shape " + ToString(x_t.shape()) +
                         " differs from " + ToString(expected));
  }
  if (t < 0) throw ParameterError("network timestep must be >= 0");
  Cache cache;
  return FromPlanar(Forward(ToPlanar(x_t), t, TokenFor(cond), cache), expected);
}

double ConvDenoiser::LossAndGradient(const Raster& x_t, int t, int token,
                                     const Raster& target,
                                     std::vector<float>& grad) const {
  if (token < 0 || token > null_token()) {
    throw ParameterError("class token out of range");
  }
  Cache cache;
  std::vector<float> out = Forward(ToPlanar(x_t), t, token, cache);
  const std::vector<float> want = ToPlanar(target);
  double loss = 0.0;
  const float scale = 2.0f / static_cast<float>(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const float diff = out[i] - want[i];
    loss += double(diff) * diff;
    out[i] = scale * diff;
  }
  Backward(cache, std::move(out), grad);
  return loss / static_cast<double>(want.size());
}

std::vector<EpochReport> ConvDenoiser::Train(
    const std::vector<Image>& images, const std::vector<int>& labels,
    const Schedule& schedule, const TrainConfig& cfg,
    const std::function<void(const EpochReport&, const ConvDenoiser&)>&
        on_epoch) {
  cfg.Validate(schedule);
  if (images.empty()) throw ParameterError("training set is empty");
  if (!labels.empty() && labels.size() != images.size()) {
    throw ParameterError("training labels and images differ in count");
  }
  const Shape shape{arch_.height, arch_.width, arch_.channels};
  for (const Image& img : images) {
    if (img.shape() != shape) {
      throw ParameterError("training image shape " + ToString(img.shape()) +
                           " differs from network shape " + ToString(shape));
    }
  }
  for (int label : labels) {
    if (label < 0 || label >= arch_.num_classes) {
      throw ParameterError("training label " + std::to_string(label) +
                           " outside the network's classes");
    }
  }

  const std::size_t n = images.size();
  std::vector<float> grad(params_.size());
  std::vector<float> velocity(params_.size(), 0.0f);
  std::vector<EpochReport> history;
  std::vector<std::size_t> order(n);
  Raster eps(shape);
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    Stream rng(cfg.seed, static_cast<std::uint64_t>(epoch), StreamTag::kTraining);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) {
      std::swap(order[i - 1], order[rng.Below(i)]);
    }
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < n; start += cfg.batch) {
      const std::size_t stop = std::min(n, start + cfg.batch);
      const float weight = 1.0f / static_cast<float>(stop - start);
      std::fill(grad.begin(), grad.end(), 0.0f);
      std::vector<float> sample_grad(params_.size());
      for (std::size_t j = start; j < stop; ++j) {
        const std::size_t idx = order[j];
        const int t = 1 + static_cast<int>(rng.Below(cfg.t_max_train));
        for (double& v : eps.data()) v = rng.Normal();
        const bool drop = rng.Uniform() < cfg.label_dropout;
        const int token =
            labels.empty() || drop ? null_token() : labels[idx];
        const Raster x_t = [&] {
          Raster r(shape);
          const double sa = schedule.sqrt_alpha_bar(t);
          const double so = schedule.sqrt_one_minus_alpha_bar(t);
          for (std::size_t q = 0; q < r.size(); ++q) {
            r.data()[q] = sa * images[idx].data()[q] + so * eps.data()[q];
          }
          return r;
        }();
        std::fill(sample_grad.begin(), sample_grad.end(), 0.0f);
        epoch_loss += LossAndGradient(x_t, t, token, eps, sample_grad);
        kernels::Active().axpy_f(weight, sample_grad.data(), grad.data(),
                                 grad.size());
      }
      if (!std::isfinite(epoch_loss)) {
        throw TrainingError("training loss became non-finite in epoch " +
                                std::to_string(epoch),
                            epoch);
      }
      const float mu = static_cast<float>(cfg.momentum);
      const float lr = static_cast<float>(cfg.lr);
      for (std::size_t q = 0; q < params_.size(); ++q) {
        velocity[q] = mu * velocity[q] + grad[q];
        params_[q] -= lr * velocity[q];
      }
    }
    history.push_back({epoch, epoch_loss / static_cast<double>(n)});
    if (on_epoch) on_epoch(history.back(), *this);
  }
  return history;
}

std::string ConvDenoiser::Describe() const {
  return "conv(" + std::to_string(arch_.c1) + "/" + std::to_string(arch_.c2) +
         "/" + std::to_string(arch_.c3) +
         ",classes=" + std::to_string(arch_.num_classes) + ")";
}

void ConvDenoiser::Save(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write model file " + path.string());
  os.write(kMagic, sizeof(kMagic));
  WriteU32(os, kFormatVersion);
  for (int v : {arch_.height, arch_.width, arch_.channels, arch_.c1, arch_.c2,
                arch_.c3, arch_.num_classes}) {
    WriteU32(os, static_cast<std::uint32_t>(v));
  }
  WriteU64(os, params_.size());
  for (float f : params_) WriteU32(os, std::bit_cast<std::uint32_t>(f));
  if (!os) throw IoError("failed writing model file " + path.string());
}

ConvDenoiser ConvDenoiser::Load(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw MissingArtifactError("model file not found: " + path.string());
  }
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open model file " + path.string());
  const std::string name = path.string();
  char magic[sizeof(kMagic)];
  if (!is.read(magic, sizeof(magic)) ||
      std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw FormatError(name + ": not a structmia model file");
  }
  const std::uint32_t version = ReadU32(is, name);
  if (version != kFormatVersion) {
    throw FormatError(name + ": unsupported model format version " +
                      std::to_string(version));
  }
  ConvNetArch arch;
  for (int* field : {&arch.height, &arch.width, &arch.channels, &arch.c1,
                     &arch.c2, &arch.c3, &arch.num_classes}) {
    const std::uint32_t v = ReadU32(is, name);
    if (v > (1u << 20)) throw FormatError(name + ": implausible architecture");
    *field = static_cast<int>(v);
  }
  try {
    arch.Validate();
  } catch (const ParameterError& e) {
    throw FormatError(name + ": " + e.what());
  }
  const std::uint64_t count_lo = ReadU32(is, name);
  const std::uint64_t count = count_lo | std::uint64_t(ReadU32(is, name)) << 32;
  ConvDenoiser model(arch, 0);
  if (count != model.params_.size()) {
    throw FormatError(name + ": parameter count " + std::to_string(count) +
                      " does not match the architecture (" +
                      std::to_string(model.params_.size()) + ")");
  }
  for (float& f : model.params_) f = std::bit_cast<float>(ReadU32(is, name));
  if (is.peek() != std::char_traits<char>::eof()) {
    throw FormatError(name + ": trailing bytes after parameters");
  }
  return model;
}

}  // namespace structmia
