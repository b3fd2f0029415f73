#pragma once

// Frozen fixtures: the surfaces of the worked examples and the printed
// intermediate data the acceptance suite compares against.

#include <string>

namespace fixtures {

// degree-10 surface with a sixfold point at the origin
inline const char* kDecic = "x^10 + y^10 + z^10 - x*y*z^4";
inline const char* kDecicLineFamily = "h^4*t1^10 + h^4*t2^10 + h^4 - t1*t2";

// quintic pencil of genus 2 (surface degree 9)
inline const char* kPencilG2 =
    "y^2+2*y^2*z+2*y^2*z^6+y^3+x*y-x*y*z-2*y*z^6*x-4*x*y^2-2*x*y^2*z"
    "-x*y^2*z^6+z^6*x^3+z*x^3*y+x^3*y^2";
inline const char* kPencilG2_H0 = "x*w - y*w";  // pencil gauge of the source
inline const char* kPencilG2_H1 = "x*y - y*w";
inline const char* kPencilG2_S1 =
    "-t*x^2-x^2*s^6*t^3+x^2*s*t^2-2*s*t*x+3*x*s^6*t^2-t*x+x*s^6*t^3+x"
    "+2+s+t^2-s*t^2-2*s^6*t-2*s^6*t^2+3*t";
inline const char* kPencilG2_S2 =
    "-t^3*y^2+2*y*s*t^2-y*s^6*t^3+y*s^6*t^2-3*y*t-2*y*t^2-y-2+s*t"
    "-s-t+2*s^6*t";
inline const char* kPencilG2_A =
    "1+6*t+4*t^3+13*t^2-4*s^6*t^3-4*s*t^2-2*s^6*t^2+4*s^7*t^4+s^12*t^4"
    "-2*s^12*t^5+10*s^6*t^4+s^12*t^6-16*s*t^3+4*s^6*t^5-4*s^7*t^5-4*s*t^4"
    "+4*s^2*t^4";

// quintic pencil of genus 3 (surface degree 9)
inline const char* kPencilG3 =
    "2*y-2*y^2-y^2*z^5-2*y^3+2*y^3*z^5-y^4*z^5+2*y^4+z^5*x^2*y^2"
    "+x^3+x^3*y^2-2*x^4-2*x^4*y+x^5";
inline const char* kPencilG3_M = "-y+y^2+x-x^2";
inline const char* kPencilG3_A1 =
    "4*x^3*(x+1)*(x-1)^2*(2*s^5*x^2-x^2-2*x-s^5*x+2)";
inline const char* kPencilG3_A2 =
    "4*y^3*(y-2)*(-1+y)^2*(2*y^2*s^5-y^2-2*y-y*s^5+2)";
inline const char* kPencilG3_Hstar =
    "-w^2-t*w^2+(2*w+t*w)*y-y^2+t*x*w+x^2";
inline const char* kPencilG3_S1 =
    "8*x^3+10*x^3*t-2*s^5*t*x^3+x^3*t^2+18*x^2*t+4*x^2-5*s^5*t^2*x^2"
    "+12*t^2*x^2-4*x^2*s^5*t-4*x*s^5*t^3+8*t*x+8*t^3*x+18*t^2*x-2*x*s^5*t"
    "-6*x*s^5*t^2-2*s^5*t^3+6*t^3+2*t^4+4*t^2-s^5*t^4-s^5*t^2";
inline const char* kPencilG3_S2 =
    "-8*y^3-10*y^3*t+2*y^3*s^5*t-y^3*t^2+3*t^3*y^2+21*y^2*t^2-2*y^2*s^5*t"
    "+20*y^2+36*y^2*t-y^2*s^5*t^2-16*y-20*t^3*y-45*y*t^2-3*t^4*y"
    "-42*y*t+t^5+16*t+4+19*t^3+7*t^4+25*t^2";

// degree-7 surface with a genus-1 quintic pencil
inline const char* kPencilG1 =
    "y^2+32*y^2*z+80*y^2*z^2+y^3-5/2*x*y-55*x*y*z-132*x*y*z^2-9/2*x*y^2"
    "-22*x*y^2*z-36*x*y^2*z^2+z*x*y^3+3/2*x^2+24*x^2*z+54*x^2*z^2"
    "+13/2*x^2*y+32*x^2*y*z+42*x^2*y*z^2-3*x^3-12*x^3*z-9*x^3*z^2"
    "+z^2*x^3*y^2";
inline const char* kPencilG1_Line = "x + y";
inline const char* kPencilG1_mX =
    "5+111*s+266*s^2-15*X-66*X*s-87*X*s^2-X^2*s+X^3*s^2";
// the pencil gauge of the source: t^0 and t^1 parts of the printed system
inline const char* kPencilG1_H0 =
    "y*w^2 + y^2*w - 2*x*w^2 - 4*x*y*w + 4*x^2*w";
inline const char* kPencilG1_H1 =
    "4*y*w^2 - 8*x*w^2 - 5*x*y*w + x*y^2 + 10*x^2*w - 2*x^2*y";
inline const char* kPencilG1_S1 =
    "16*s^2*t^3*x^2+320*s^2*t^3*x+20*s^2*t^2*x^2-12*s*x^2*t^3+176*s^2*t^2*x"
    "+4*x^2*s^2*t+112*s*t^3*x-3*t^3*x^2+320*t^2*s^2+40*s^2*t*x+28*s*t^2*x"
    "+16*t^3*x+160*t*s^2+4*x*s^2+128*t^2*s-16*t^3+4*t^2*x+20*s^2"
    "+64*t*s-8*t^2+8*s-t";
inline const char* kPencilG1_S2 =
    "-160*s^2*t^3*y+832*t^3*s^2-72*t^2*s^2*y-56*s*t^3*y+2*y^2*t^2*s"
    "-2*y^2*t^3+768*t^2*s^2+256*t^3*s-46*t^2*s*y+12*t^3*y+228*t*s^2"
    "+2*y*s^2+256*t^2*s-8*y*t*s-16*t^3+3*y*t^2+22*s^2+80*t*s-8*t^2+8*s-t";

// degree-8 surface with a genus-4 quintic pencil and two radical points
inline const char* kPencilG4 =
    "-1+y^3-3*x-x*z^7-x*z+x*y^2+x*y^3+x^3*y^2";
inline const char* kPencilG4_PointX = "sqrt(s^7+s+1)";
inline const char* kPencilG4_H0 = "y*w - w^2";
inline const char* kPencilG4_H1 = "x*y - x*w";
inline const char* kPencilG4_S1 = "-(1+t*x)^3";
inline const char* kPencilG4_S2 =
    "-t^3+t^3*y^3+3*t^2+t^2*s^7+t^2*s-t^2*y^2-t^2*y^3-y^2";

// degree-5 surface with a trigonal genus-4 pencil
inline const char* kTrigonal =
    "2*z^5-y*z^4+2*y^2*z^3+14*y^3*z^2+8*y^4*z-y^5+x*y*z^3+x*y^2*z^2"
    "+2*x*y^3*z+2*x*y^4-2*x^2*y*z^2-9*x^2*y^2*z+2*x^2*y^3-x^3*z^2"
    "-x^3*y^2-x^4*z-7*x^4*y+5*x^5";
inline const char* kTrigonal_Basis0 = "y^2 + y*s*w";
inline const char* kTrigonal_Basis1 = "y^2 + x^2 - s^2*w^2";
inline const char* kTrigonal_Basis2 = "x*y";
inline const char* kTrigonal_Basis3 = "x^2 - x*s*w";
inline const char* kTrigonal_Q = "u0*u2 + u0*u3 - u1*u2 + u2*u3 - u2^2";
inline const char* kTrigonal_RulingA = "u0 - u1 - u2";
inline const char* kTrigonal_RulingB = "u0 + u2";
inline const char* kTrigonal_H =
    "y*s + s^2 - x^2 - x*y - t*(y*s + y^2 + x*y)";
inline const char* kTrigonal_S1 =
    "(-t^2+t^3-8*t^5-1+3*t^4-2*t)*x^3"
    "+(2*s*t^4-4*s*t-2*s*t^3+3*s*t^2+3*s-6*s*t^5)*x^2"
    "+(12*s^2*t^2-s^2*t^3-4*s^2*t^5-3*s^2+14*s^2*t)*x"
    "+s^3*t^4-8*s^3*t-2*s^3*t^3-14*s^3*t^2+s^3-2*t^5*s^3";
inline const char* kTrigonal_S2 =
    "(-t^2+t^3-8*t^5-1+3*t^4-2*t)*y^3"
    "+(-11*s*t^3+30*s*t^4+10*s-s*t^2)*y^2"
    "+(13*s^2*t^2-40*s^2*t^3+15*s^2-2*s^2*t)*y"
    "+4*s^3+20*s^3*t^2-6*s^3*t";

}  // namespace fixtures
