#pragma once

#include <vector>

#include "qimage/image.hpp"
#include "qsim/circuit.hpp"
#include "qsim/state.hpp"

namespace qimage {

/// Color angle per pixel position, radians in [0, pi/2]. For binary input
/// the angle is 0 (black) or pi/2 (white).
std::vector<double> angle_field(const BinaryImage& img);

/// Position-register layout used by every encoding here: pixel position
/// q = row * side + col sits on position qubits 0..2n-1 with qubit i holding
/// bit i of q (little-endian); the color qubit is the next index up.
int frqi_qubit_count(const BinaryImage& img);

/// Full encoding: amplitude cos(theta_q)/2^n on |q>|0> and sin(theta_q)/2^n
/// on |q>|1>. Unit norm by construction.
qsim::StateVector frqi_state(const BinaryImage& img);

/// Folded color angle for one sub-position:
/// (pi/2) * (color_bit + high_bit/2 + low_bit/4), where (high_bit, low_bit)
/// are the two position bits being absorbed into the color qubit.
double compressed_angle(int color_bit, int high_bit, int low_bit);

int compressed_qubit_count(const BinaryImage& img);

/// Folded encoding over 2n-2 position qubits plus the color qubit: position
/// prefix p keeps a uniform weight 1/2^(n-1) and its color vector is the
/// direction of sum over the four folded sub-positions q = 4p + t of
/// (cos(angle), sin(angle)); each prefix's vector is normalized
/// individually, so the synthesized circuit below reproduces the state
/// exactly. Requires side >= 4.
qsim::StateVector compressed_state(const BinaryImage& img);

/// Per-prefix color rotation angle of the compressed encoding (the direction
/// of the folded sum). Always in (0, pi).
double compressed_prefix_angle(const BinaryImage& img, std::size_t prefix);

/// Hadamards on every position qubit, then per position (or prefix) with a
/// nonzero color angle an X-conjugated multi-controlled RY(2 * angle) on the
/// color qubit. Simulating from |0...0> reproduces frqi_state /
/// compressed_state to float precision.
qsim::CircuitProgram encode_circuit(const BinaryImage& img, bool compressed);

}  // namespace qimage
