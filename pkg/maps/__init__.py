"""
推理模型包

- fcm: 模糊认知映射及其合并/特殊化
- frm: 模糊关系映射
- fcrm: FCM 与 FRM 组成的双模型
- linguistic: 模糊语言认知映射与关系映射
"""
