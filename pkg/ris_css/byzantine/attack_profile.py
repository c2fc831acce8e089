import logging
from typing import Any, Literal, Optional

from pydantic import BaseModel, Field, computed_field, model_validator

logger = logging.getLogger(__name__)

AttackKind = Literal["AN", "AY", "AF", "RD", "none"]
AssignmentMode = Literal["fixed_fraction", "iid_bernoulli"]

# 各命名攻击的固定翻转概率 (p01, p10)；RD 为自由参数
NAMED_FLIPS: dict[str, tuple[float, float]] = {
    "AN": (1.0, 0.0),
    "AY": (0.0, 1.0),
    "AF": (1.0, 1.0),
    "none": (0.0, 0.0),
}


class AttackProfile(BaseModel):
    """拜占庭攻击参数 (α, P_{0,1}, P_{1,0}) 及 FC 可见的边缘翻转率 π"""

    alpha: float = Field(default=0.0, ge=0.0, le=1.0, description="拜占庭节点比例 α")
    p01: float = Field(default=0.0, ge=0.0, le=1.0, description="恶意节点把 1 翻成 0 的概率")
    p10: float = Field(default=0.0, ge=0.0, le=1.0, description="恶意节点把 0 翻成 1 的概率")
    assignment_mode: AssignmentMode = Field(
        default="fixed_fraction",
        description="恶意节点指派方式：固定比例随机子集 / 逐节点独立伯努利",
    )

    @computed_field
    @property
    def pi01(self) -> float:
        """π_{0,1} = α·P_{0,1}"""
        return self.alpha * self.p01

    @computed_field
    @property
    def pi10(self) -> float:
        """π_{1,0} = α·P_{1,0}"""
        return self.alpha * self.p10


class NamedAttack(BaseModel):
    """命名攻击模式及其对应的攻击参数"""

    kind: AttackKind = Field(default="none", description="攻击模式：AN/AY/AF/RD/none")
    profile: AttackProfile = Field(default_factory=AttackProfile, description="攻击参数")

    @model_validator(mode="before")
    @classmethod
    def _fill_named_flips(cls, data: Any) -> Any:
        """固定模式未给出翻转概率时按模式补全"""
        if not isinstance(data, dict):
            return data
        kind = data.get("kind", "none")
        if kind not in NAMED_FLIPS:
            return data
        profile = data.get("profile")
        if isinstance(profile, AttackProfile):
            profile = profile.model_dump(exclude={"pi01", "pi10"})
        profile = dict(profile or {})
        p01, p10 = NAMED_FLIPS[kind]
        profile.setdefault("p01", p01)
        profile.setdefault("p10", p10)
        return {**data, "profile": profile}

    @model_validator(mode="after")
    def _check_kind(self):
        if self.kind in NAMED_FLIPS:
            expected = NAMED_FLIPS[self.kind]
            if (self.profile.p01, self.profile.p10) != expected:
                raise ValueError(
                    f"{self.kind} 攻击要求 (p01, p10) = {expected}，"
                    f"当前为 ({self.profile.p01}, {self.profile.p10})"
                )
        return self

    @classmethod
    def build(
        cls,
        kind: AttackKind,
        alpha: float,
        p01: Optional[float] = None,
        p10: Optional[float] = None,
        assignment_mode: AssignmentMode = "fixed_fraction",
    ) -> "NamedAttack":
        """按模式构造；RD 必须显式给出 p01 与 p10"""
        profile: dict[str, Any] = {"alpha": alpha, "assignment_mode": assignment_mode}
        if kind == "RD":
            if p01 is None or p10 is None:
                raise ValueError("RD 攻击必须同时给出 p01 与 p10")
        if p01 is not None:
            profile["p01"] = p01
        if p10 is not None:
            profile["p10"] = p10
        return cls(kind=kind, profile=profile)

    @property
    def label(self) -> str:
        """用于表格/CSV 的模式名；RD 附带翻转概率以区分不同参数"""
        if self.kind == "RD":
            return f"RD({self.profile.p01:g},{self.profile.p10:g})"
        return self.kind
